// First-visit storyboard: where a question goes and what it uses up.
// Shown once (a flag in localStorage remembers), always skippable.

import { el, clear } from './dom.ts';
import { STRINGS } from './strings.ts';

const SEEN_KEY = 'ecoprompt-tutorial-seen';

export function tutorialSeen(storage: Storage = localStorage): boolean {
    return storage.getItem(SEEN_KEY) === 'yes';
}

export function resetTutorial(storage: Storage = localStorage): void {
    storage.removeItem(SEEN_KEY);
}

export function runTutorial(
    root: HTMLElement,
    onDone: () => void,
    storage: Storage = localStorage,
): void {
    if (tutorialSeen(storage)) {
        onDone();
        return;
    }
    let step = 0;
    const overlay = el('div', { class: 'modal-backdrop', id: 'tutorial' });
    const card = el('div', { class: 'modal tutorial-card' });
    overlay.append(card);
    root.append(overlay);

    const finish = () => {
        storage.setItem(SEEN_KEY, 'yes');
        overlay.remove();
        onDone();
    };

    const draw = () => {
        const page = STRINGS.tutorialSteps[step];
        const last = step === STRINGS.tutorialSteps.length - 1;
        clear(card);
        card.append(
            el('div', { class: 'tutorial-art', text: page.art }),
            el('h2', { text: page.title }),
            el('p', { text: page.text }),
            el('div', { class: 'modal-buttons' }, [
                el('button', {
                    id: 'tutorial-skip',
                    text: STRINGS.tutorialSkip,
                    onclick: finish,
                }),
                el('button', {
                    id: 'tutorial-next',
                    class: 'primary',
                    text: last ? STRINGS.tutorialDone : STRINGS.tutorialNext,
                    onclick: () => {
                        if (last) {
                            finish();
                        } else {
                            step += 1;
                            draw();
                        }
                    },
                }),
            ]),
        );
    };
    draw();
}
