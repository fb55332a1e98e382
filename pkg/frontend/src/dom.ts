// DOM helpers. Comment text is hostile by definition, so children are only
// ever attached as nodes or text — nothing here touches innerHTML.

export type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Child[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  append(node, children);
  return node;
}

export function append(node: Node, children: Child[]): void {
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.appendChild(
      typeof child === "string" ? document.createTextNode(child) : child,
    );
  }
}

export function clear(node: Node): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function button(
  label: string,
  onClick: (event: MouseEvent) => void,
  attrs: Record<string, string> = {},
): HTMLButtonElement {
  const node = el("button", attrs, [label]);
  node.addEventListener("click", onClick);
  return node;
}

/** Render text with [start, end) character spans wrapped in <mark>. */
export function highlightSpans(
  text: string,
  spans: { start: number; end: number }[],
): DocumentFragment {
  const fragment = document.createDocumentFragment();
  const ordered = [...spans]
    .filter((s) => s.start >= 0 && s.end <= text.length && s.start < s.end)
    .sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const span of ordered) {
    if (span.start < cursor) continue; // overlapping span: keep the first
    if (span.start > cursor) {
      fragment.appendChild(document.createTextNode(text.slice(cursor, span.start)));
    }
    const mark = document.createElement("mark");
    mark.textContent = text.slice(span.start, span.end);
    fragment.appendChild(mark);
    cursor = span.end;
  }
  if (cursor < text.length) {
    fragment.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return fragment;
}

export function formatTimer(activeSeconds: number, limitSeconds: number): string {
  const fmt = (total: number) => {
    const mins = Math.floor(total / 60);
    const secs = Math.floor(total % 60);
    return `${String(mins).padStart(2, "0")}:${String(secs).padStart(2, "0")}`;
  };
  const base = `${fmt(activeSeconds)} / ${fmt(limitSeconds)}`;
  return activeSeconds > limitSeconds ? `${base} (over)` : base;
}

export function formatMetric(value: number): string {
  return value.toFixed(3);
}
