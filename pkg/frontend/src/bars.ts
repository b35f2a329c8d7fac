// Cumulative budget bars for the calculator page.
//
// The fill width is the server's display_fraction rendered verbatim —
// the client never recomputes total/limit — and the color class is the
// server's status word, so "exceeded" is red because the stylesheet says
// so, not because the client compared numbers.

import { ResourceKey, ResourceStatus } from './api.ts';
import { clear, el } from './dom.ts';
import { STRINGS } from './strings.ts';

const RESOURCE_LABELS: Record<ResourceKey, string> = {
    water: STRINGS.waterLabel,
    carbon: STRINGS.carbonLabel,
    energy: STRINGS.energyLabel,
};

const RESOURCE_UNITS: Record<ResourceKey, string> = {
    water: 'mL',
    carbon: 'g',
    energy: 'Wh',
};

export function renderBars(
    container: HTMLElement,
    statuses: Record<ResourceKey, ResourceStatus>,
): void {
    clear(container);
    for (const resource of ['water', 'carbon', 'energy'] as ResourceKey[]) {
        const status = statuses[resource];
        const limitText =
            status.limit === null
                ? STRINGS.noLimit
                : `${status.total} / ${status.limit} ${RESOURCE_UNITS[resource]}`;
        const fill = el('div', {
            class: `bar-fill bar-${status.status}`,
            'data-resource': resource,
            'data-fraction': String(status.display_fraction),
        });
        fill.style.width = `${status.display_fraction * 100}%`;
        container.append(
            el('div', { class: 'bar-row', 'data-resource': resource }, [
                el('span', { class: 'bar-label', text: RESOURCE_LABELS[resource] }),
                el('div', { class: 'bar-track' }, [fill]),
                el('span', { class: 'bar-amount', text: limitText }),
                el('span', {
                    class: `bar-status bar-status-${status.status}`,
                    text: STRINGS.statusWords[status.status],
                }),
            ]),
        );
    }
}
