// Whack-the-pest minigame. The server's start event tells us the rules
// (required hits, time window, maximum believable hit rate); we count
// clicks inside the window and hand the total back for the server to
// judge. The cap below only keeps honest players from tripping the
// server's anti-cheat on a lucky streak — the authoritative check is
// server-side.

import { el } from './dom.ts';
import { STRINGS } from './strings.ts';

export interface MinigameRules {
    required_hits: number;
    window_s: number;
    max_hit_rate_hz: number;
}

export function playMinigame(
    root: HTMLElement,
    rules: MinigameRules,
    onDone: (hits: number) => void,
): void {
    let hits = 0;
    const maxHits = Math.floor(rules.window_s * rules.max_hit_rate_hz);
    const overlay = el('div', { class: 'modal-backdrop', id: 'pest-minigame' });
    const counter = el('p', { id: 'minigame-hits', text: '0' });
    const bug = el('button', {
        id: 'minigame-bug',
        class: 'bug-button',
        text: '\u{1F41B}',
        onclick: () => {
            if (hits >= maxHits) return;
            hits += 1;
            counter.textContent = String(hits);
            // hop to a new spot so it takes aim, not key-repeat
            bug.style.marginLeft = `${(hits * 37) % 60}%`;
            bug.style.marginTop = `${(hits * 23) % 40}%`;
        },
    });
    overlay.append(
        el('div', { class: 'modal minigame-modal' }, [
            el('h2', { text: STRINGS.minigameTitle }),
            el('p', { text: STRINGS.minigameHelp }),
            el('div', { class: 'bug-arena' }, [bug]),
            counter,
        ]),
    );
    root.append(overlay);
    setTimeout(() => {
        overlay.remove();
        onDone(hits);
    }, rules.window_s * 1000);
}
