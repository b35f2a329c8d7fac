// Footprint calculator page: ask a question, see the answer next to what
// it cost, watch session totals climb toward self-chosen limits.
//
// Every number shown is copied from an API response field. Relatable
// units (drops, balloons, LED minutes) are the default; the exact
// physical numbers sit in a collapsible row underneath.

import { ApiClient, ApiError, PromptResponse, SessionView } from './api.ts';
import { renderBars } from './bars.ts';
import { clear, el } from './dom.ts';
import { STRINGS } from './strings.ts';

export class CalculatorPage {
    private api: ApiClient;
    private session: SessionView | null = null;
    private busy = false;

    private promptInput!: HTMLTextAreaElement;
    private responsePane!: HTMLElement;
    private lastCost!: HTMLElement;
    private bars!: HTMLElement;
    private notifications!: HTMLElement;
    private errorLine!: HTMLElement;
    private limitsError!: HTMLElement;
    private limitInputs!: Record<'water' | 'carbon' | 'energy', HTMLInputElement>;

    constructor(api: ApiClient) {
        this.api = api;
    }

    async mount(root: HTMLElement): Promise<void> {
        this.promptInput = el('textarea', {
            id: 'prompt-input',
            placeholder: STRINGS.promptPlaceholder,
            rows: '3',
        });
        this.responsePane = el('div', { id: 'response-pane', class: 'response-pane' });
        this.lastCost = el('div', { id: 'last-cost', class: 'cost-panel' });
        this.bars = el('div', { id: 'cumulative-bars', class: 'bars' });
        this.notifications = el('ul', { id: 'notifications', class: 'notifications' });
        this.errorLine = el('p', { id: 'calc-error', class: 'error-line' });
        this.limitsError = el('p', { id: 'limits-error', class: 'error-line' });
        this.limitInputs = {
            water: el('input', { id: 'limit-water', type: 'number', min: '0' }),
            carbon: el('input', { id: 'limit-carbon', type: 'number', min: '0' }),
            energy: el('input', { id: 'limit-energy', type: 'number', min: '0' }),
        };

        root.append(
            el('section', { class: 'ask-section' }, [
                this.promptInput,
                el('button', {
                    id: 'ask-ai',
                    class: 'primary',
                    text: STRINGS.askButton,
                    onclick: () => void this.submit(),
                }),
                this.errorLine,
            ]),
            this.responsePane,
            this.lastCost,
            el('section', { class: 'totals-section' }, [
                el('h2', { text: STRINGS.totalsTitle }),
                this.bars,
                this.notifications,
            ]),
            el('section', { class: 'limits-section' }, [
                el('h2', { text: STRINGS.limitsTitle }),
                el('p', { class: 'help-line', text: STRINGS.limitsHelp }),
                el('div', { class: 'limits-grid' }, [
                    el('label', { text: `${STRINGS.waterLabel} (mL)` }),
                    this.limitInputs.water,
                    el('label', { text: `${STRINGS.carbonLabel} (g)` }),
                    this.limitInputs.carbon,
                    el('label', { text: `${STRINGS.energyLabel} (Wh)` }),
                    this.limitInputs.energy,
                ]),
                el('button', {
                    id: 'save-limits',
                    text: STRINGS.limitsSave,
                    onclick: () => void this.saveLimits(),
                }),
                this.limitsError,
            ]),
        );

        this.session = await this.api.createSession();
        this.renderSession(this.session);
    }

    private renderSession(view: SessionView): void {
        renderBars(this.bars, view.statuses);
        this.limitInputs.water.value = view.limits.water_ml === null ? '' : String(view.limits.water_ml);
        this.limitInputs.carbon.value = view.limits.carbon_g === null ? '' : String(view.limits.carbon_g);
        this.limitInputs.energy.value = view.limits.energy_wh === null ? '' : String(view.limits.energy_wh);
    }

    async submit(): Promise<void> {
        if (this.session === null || this.busy) return;
        const text = this.promptInput.value.trim();
        if (!text) {
            this.errorLine.textContent = STRINGS.emptyPrompt;
            return;
        }
        this.errorLine.textContent = '';
        this.busy = true;
        this.responsePane.textContent = STRINGS.thinking;
        try {
            const reply = await this.api.submitPrompt(this.session.id, text);
            this.renderReply(reply);
        } catch (err) {
            this.responsePane.textContent = '';
            this.errorLine.textContent = err instanceof ApiError ? err.message : String(err);
        } finally {
            this.busy = false;
        }
    }

    private renderReply(reply: PromptResponse): void {
        clear(this.responsePane);
        this.responsePane.append(
            el('p', { id: 'response-text', text: reply.response_text }),
        );

        clear(this.lastCost);
        const badge = (resource: string, icon: string, display: string, label: string) =>
            el('div', { class: 'cost-badge', 'data-resource': resource }, [
                el('span', { class: 'cost-icon', text: icon }),
                el('span', { class: 'cost-display', text: display }),
                el('span', { class: 'cost-kind', text: label }),
            ]);
        const details = el('div', { class: 'cost-details hidden', id: 'cost-details' }, [
            el('span', { 'data-field': 'water_ml', text: `${reply.footprint.water_ml} mL` }),
            el('span', { 'data-field': 'carbon_g', text: `${reply.footprint.carbon_g} g CO2` }),
            el('span', { 'data-field': 'energy_wh', text: `${reply.footprint.energy_wh} Wh` }),
            el('span', { 'data-field': 'latency_s', text: `${reply.usage.latency_s} s` }),
        ]);
        this.lastCost.append(
            el('h2', { text: STRINGS.lastCostTitle }),
            el('div', { class: 'cost-badges' }, [
                badge('water', '\u{1F4A7}', reply.relatable.water_display, STRINGS.waterLabel),
                badge('carbon', '\u{1F388}', reply.relatable.carbon_display, STRINGS.carbonLabel),
                badge('energy', '\u{1F4A1}', reply.relatable.energy_display, STRINGS.energyLabel),
            ]),
            el('button', {
                id: 'toggle-details',
                class: 'link-button',
                text: STRINGS.detailsToggle,
                onclick: () => details.classList.toggle('hidden'),
            }),
            details,
            el('p', { class: 'estimate-label', text: reply.footprint.label }),
        );

        renderBars(this.bars, reply.statuses);
        for (const transition of reply.transitions) {
            const from = STRINGS.statusWords[transition.from];
            const to = STRINGS.statusWords[transition.to];
            this.notifications.prepend(
                el('li', {
                    class: `notice notice-${transition.to}`,
                    text: `${RESOURCE_TITLES[transition.resource]}: ${from} → ${to}`,
                }),
            );
        }
        if (this.session) {
            this.session.totals = reply.totals;
            this.session.statuses = reply.statuses;
        }
    }

    async saveLimits(): Promise<void> {
        if (this.session === null) return;
        const parse = (input: HTMLInputElement): number | null | 'bad' => {
            const raw = input.value.trim();
            if (raw === '') return null;
            const value = Number(raw);
            if (!Number.isFinite(value) || value <= 0) return 'bad';
            return value;
        };
        const water = parse(this.limitInputs.water);
        const carbon = parse(this.limitInputs.carbon);
        const energy = parse(this.limitInputs.energy);
        if (water === 'bad' || carbon === 'bad' || energy === 'bad') {
            this.limitsError.textContent = STRINGS.limitInvalid;
            return;
        }
        this.limitsError.textContent = '';
        this.session = await this.api.setLimits(this.session.id, {
            water_ml: water,
            carbon_g: carbon,
            energy_wh: energy,
        });
        this.renderSession(this.session);
    }
}

const RESOURCE_TITLES: Record<string, string> = {
    water: STRINGS.waterLabel,
    carbon: STRINGS.carbonLabel,
    energy: STRINGS.energyLabel,
};
