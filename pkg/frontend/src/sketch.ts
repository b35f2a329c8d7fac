// Scarecrow sketch pad. The drawing itself never leaves the browser:
// the image data is kept in localStorage and the server only receives a
// short reference string. That keeps the hand-made path genuinely free —
// no lake water, no upload.

import { el } from './dom.ts';
import { STRINGS } from './strings.ts';

const REF_PREFIX = 'local:scarecrow-';

export function openSketchPad(
    root: HTMLElement,
    onDone: (drawingRef: string) => void,
    storage: Storage = localStorage,
): void {
    const overlay = el('div', { class: 'modal-backdrop', id: 'sketch-pad' });
    const canvas = el('canvas', { id: 'sketch-canvas', width: '240', height: '240' });
    const ctx = canvas.getContext('2d');
    let drawing = false;

    if (ctx) {
        ctx.fillStyle = '#fffbe8';
        ctx.fillRect(0, 0, canvas.width, canvas.height);
        ctx.strokeStyle = '#5b3a1e';
        ctx.lineWidth = 4;
        ctx.lineCap = 'round';
    }
    const point = (ev: MouseEvent): [number, number] => {
        const box = canvas.getBoundingClientRect();
        return [ev.clientX - box.left, ev.clientY - box.top];
    };
    canvas.addEventListener('mousedown', (ev) => {
        drawing = true;
        if (ctx) {
            const [x, y] = point(ev);
            ctx.beginPath();
            ctx.moveTo(x, y);
        }
    });
    canvas.addEventListener('mousemove', (ev) => {
        if (!drawing || !ctx) return;
        const [x, y] = point(ev);
        ctx.lineTo(x, y);
        ctx.stroke();
    });
    canvas.addEventListener('mouseup', () => {
        drawing = false;
    });

    overlay.append(
        el('div', { class: 'modal sketch-modal' }, [
            el('h2', { text: STRINGS.sketchTitle }),
            canvas,
            el('div', { class: 'modal-buttons' }, [
                el('button', {
                    id: 'sketch-clear',
                    text: STRINGS.sketchClear,
                    onclick: () => {
                        if (ctx) {
                            ctx.fillStyle = '#fffbe8';
                            ctx.fillRect(0, 0, canvas.width, canvas.height);
                            ctx.fillStyle = '#5b3a1e';
                        }
                    },
                }),
                el('button', {
                    id: 'sketch-use',
                    class: 'primary',
                    text: STRINGS.sketchUse,
                    onclick: () => {
                        const ref = REF_PREFIX + Date.now().toString(36);
                        try {
                            // jsdom has no 2D context; a blank data URL is fine there
                            storage.setItem(ref, ctx ? canvas.toDataURL() : 'data:,');
                        } catch {
                            // storage full or unavailable — the ref alone still works
                        }
                        overlay.remove();
                        onDone(ref);
                    },
                }),
            ]),
        ]),
    );
    root.append(overlay);
}

export function loadSketch(ref: string, storage: Storage = localStorage): string | null {
    if (!ref.startsWith(REF_PREFIX)) return null;
    return storage.getItem(ref);
}
