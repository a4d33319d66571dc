// Socket wiring with a fake transport: inbound messages reach the renderer,
// outbound triggers reach the socket, disconnects surface in the banner.

import { afterEach, describe, expect, it } from "vitest";

import { connect, defaultUrl, type SocketLike } from "../src/client";
import { MIME_TYPE } from "../src/document";
import { drawFrame, mountRenderer, s3Document } from "./helpers";

class FakeSocket implements SocketLike {
  url: string;
  sent: string[] = [];
  closed = false;
  private handlers = new Map<string, ((event: any) => void)[]>();

  constructor(url: string) {
    this.url = url;
  }

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
  }

  addEventListener(type: string, handler: (event: any) => void): void {
    const list = this.handlers.get(type) ?? [];
    list.push(handler);
    this.handlers.set(type, list);
  }

  emit(type: string, event: unknown = {}): void {
    for (const handler of this.handlers.get(type) ?? []) handler(event);
  }
}

afterEach(() => {
  document.body.innerHTML = "";
});

describe("connect", () => {
  it("feeds inbound text frames to the renderer", () => {
    const { renderer, root } = mountRenderer();
    let socket!: FakeSocket;
    connect("ws://test/ws", renderer, (url) => (socket = new FakeSocket(url)));
    expect(socket.url).toBe("ws://test/ws");

    socket.emit("message", {
      data: JSON.stringify({ type: "hello", payload: { version: "1", mime: MIME_TYPE } }),
    });
    socket.emit("message", { data: drawFrame(s3Document()) });
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);

    // binary or non-string payloads are ignored rather than crashing
    socket.emit("message", { data: new ArrayBuffer(4) });
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);
  });

  it("routes renderer output to socket.send", () => {
    const { renderer } = mountRenderer();
    let socket!: FakeSocket;
    connect("ws://test/ws", renderer, (url) => (socket = new FakeSocket(url)));
    renderer.sendFrame("frame-text");
    expect(socket.sent).toEqual(["frame-text"]);
  });

  it("reports a close and stops sending", () => {
    const { renderer, root } = mountRenderer();
    let socket!: FakeSocket;
    connect("ws://test/ws", renderer, (url) => (socket = new FakeSocket(url)));
    socket.emit("close");
    expect(root.querySelector(".fr-banner")!.textContent).toContain("disconnected");
    renderer.sendFrame("after-close");
    expect(socket.sent).toEqual([]);
  });

  it("reports transport errors", () => {
    const { renderer, root } = mountRenderer();
    let socket!: FakeSocket;
    connect("ws://somewhere/ws", renderer, (url) => (socket = new FakeSocket(url)));
    socket.emit("error");
    expect(root.querySelector(".fr-banner")!.textContent).toContain("ws://somewhere/ws");
  });

  it("close() closes the underlying socket", () => {
    const { renderer } = mountRenderer();
    let socket!: FakeSocket;
    const conn = connect("ws://test/ws", renderer, (url) => (socket = new FakeSocket(url)));
    conn.close();
    expect(socket.closed).toBe(true);
  });
});

describe("defaultUrl", () => {
  it("matches the page's scheme and host", () => {
    expect(defaultUrl({ protocol: "http:", host: "localhost:8000" })).toBe(
      "ws://localhost:8000/ws",
    );
    expect(defaultUrl({ protocol: "https:", host: "example.org" })).toBe(
      "wss://example.org/ws",
    );
  });
});
