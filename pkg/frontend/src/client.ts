// Websocket wiring: frames in arrival order into the renderer, triggers out.
// The socket constructor is injectable so tests can drive a fake transport.

import type { Renderer } from "./renderer";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "message" | "close" | "error", handler: (event: any) => void): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface Connection {
  socket: SocketLike;
  close(): void;
}

export function connect(
  url: string,
  renderer: Renderer,
  makeSocket: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
): Connection {
  const socket = makeSocket(url);
  renderer.sendFrame = (text) => socket.send(text);

  socket.addEventListener("message", (event: { data: unknown }) => {
    if (typeof event.data === "string") {
      renderer.applyFrame(event.data);
    }
  });
  socket.addEventListener("close", () => {
    renderer.showBanner("disconnected", "the server closed the connection", "warning");
    renderer.sendFrame = () => undefined;
  });
  socket.addEventListener("error", () => {
    renderer.showBanner("connection error", url, "error");
  });

  return { socket, close: () => socket.close() };
}

export function defaultUrl(loc: { protocol: string; host: string }): string {
  const scheme = loc.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${loc.host}/ws`;
}
