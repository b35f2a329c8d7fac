// The AI usage warning modal. Every control that would trigger an
// AI-kind action funnels through confirmAiUse() — there is no other code
// path that sets ack_warning, so the modal cannot be bypassed.

import { el } from './dom.ts';
import { STRINGS } from './strings.ts';

export function confirmAiUse(
    root: HTMLElement,
    kindLabel: string,
    cost: number,
): Promise<boolean> {
    return new Promise((resolve) => {
        const overlay = el('div', { class: 'modal-backdrop', id: 'ai-warning' });
        const close = (answer: boolean) => {
            overlay.remove();
            resolve(answer);
        };
        overlay.append(
            el('div', { class: 'modal warning-modal', role: 'alertdialog' }, [
                el('h2', { text: STRINGS.warningTitle }),
                el('p', {
                    id: 'ai-warning-text',
                    text: STRINGS.warningBody(kindLabel, cost),
                }),
                el('div', { class: 'modal-buttons' }, [
                    el('button', {
                        id: 'ai-warning-cancel',
                        text: STRINGS.warningCancel,
                        onclick: () => close(false),
                    }),
                    el('button', {
                        id: 'ai-warning-confirm',
                        class: 'danger',
                        text: STRINGS.warningConfirm,
                        onclick: () => close(true),
                    }),
                ]),
            ]),
        );
        root.append(overlay);
    });
}
