import { connect, defaultUrl } from "./client";
import { Renderer } from "./renderer";

const root = document.getElementById("app");
if (root) {
  const renderer = new Renderer(root);
  connect(defaultUrl(window.location), renderer);
}
