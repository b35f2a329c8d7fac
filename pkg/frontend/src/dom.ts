// Small DOM builders so pages read as structure, not as createElement noise.

type Attrs = Record<string, string | boolean | ((ev: Event) => void)>;

export function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Attrs = {},
    children: Array<Node | string> = [],
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (typeof value === 'function') {
            node.addEventListener(key.replace(/^on/, ''), value);
        } else if (typeof value === 'boolean') {
            if (value) node.setAttribute(key, '');
        } else if (key === 'text') {
            node.textContent = value;
        } else {
            node.setAttribute(key, value);
        }
    }
    for (const child of children) {
        node.append(child);
    }
    return node;
}

export function clear(node: HTMLElement): void {
    while (node.firstChild) node.removeChild(node.firstChild);
}

export function show(node: HTMLElement): void {
    node.classList.remove('hidden');
}

export function hide(node: HTMLElement): void {
    node.classList.add('hidden');
}
