// Farm game page. The server owns every rule; this page renders the
// state it returns, sends one action at a time, and ticks the clock at
// 1 Hz. The lake gauge, the grid, the log — all mirror the last server
// response with no client-side prediction.

import {
    ApiClient,
    ApiError,
    GameAction,
    GameEvent,
    GameStateView,
    Score,
    TileView,
} from './api.ts';
import { clear, el } from './dom.ts';
import { playMinigame, MinigameRules } from './minigame.ts';
import { openSketchPad } from './sketch.ts';
import { STRINGS, eventText } from './strings.ts';
import { confirmAiUse } from './warning.ts';

const CROP_ART: Record<string, string> = {
    wheat: '\u{1F33E}',
    carrot: '\u{1F955}',
    corn: '\u{1F33D}',
    pumpkin: '\u{1F383}',
    turnip: '\u{1F9C5}',
};

const STAGE_ART: Record<string, string> = {
    seedling: '\u{1F331}',
    growing: '\u{1F33F}',
};

type Tool = 'plant' | 'water' | 'harvest';

export class GamePage {
    private api: ApiClient;
    private root!: HTMLElement;
    private gameId = '';
    private state: GameStateView | null = null;
    private aiCosts: Record<string, number> = {};
    private tool: Tool = 'plant';
    private seedChoice = 'wheat';
    private queue: Promise<void> = Promise.resolve();
    private timer: ReturnType<typeof setInterval> | null = null;
    private tickInFlight = false;

    private grid!: HTMLElement;
    private lakeValue!: HTMLElement;
    private lakeFill!: HTMLElement;
    private statusLog!: HTMLElement;
    private headerStats!: HTMLElement;
    private seedList!: HTMLElement;
    private produceList!: HTMLElement;
    private notifications!: HTMLElement;

    constructor(api: ApiClient) {
        this.api = api;
    }

    async mount(root: HTMLElement, gameId?: string): Promise<void> {
        this.root = root;
        if (gameId === undefined) {
            const created = await this.api.createGame();
            this.gameId = created.id;
        } else {
            this.gameId = gameId;
        }
        const view = await this.api.getGameState(this.gameId);
        this.aiCosts = view.ai_costs;
        this.state = view.state;

        this.grid = el('div', { id: 'tile-grid', class: 'tile-grid' });
        this.lakeValue = el('span', { id: 'lake-value', class: 'lake-value' });
        this.lakeFill = el('div', { id: 'lake-fill', class: 'lake-fill' });
        this.statusLog = el('ul', { id: 'status-log', class: 'status-log' });
        this.headerStats = el('div', { id: 'game-stats', class: 'game-stats' });
        this.seedList = el('div', { id: 'seed-list' });
        this.produceList = el('div', { id: 'produce-list' });
        this.notifications = el('ul', { id: 'game-notifications', class: 'notifications' });

        const toolButton = (id: string, label: string, onclick: () => void, aiKind?: string) => {
            const children: Array<Node | string> = [label];
            if (aiKind !== undefined) {
                children.push(
                    el('span', {
                        class: 'ai-cost-tag',
                        text: ` AI −${this.aiCosts[aiKind] ?? '?'}\u{1F4A7}`,
                    }),
                );
            }
            return el('button', { id, class: 'tool-button', onclick }, children);
        };

        root.append(
            el('div', { class: 'game-layout' }, [
                el('aside', { id: 'game-sidebar', class: 'game-sidebar' }, [
                    el('h2', { text: STRINGS.sidebarLake }),
                    el('div', { class: 'lake-gauge' }, [this.lakeFill]),
                    this.lakeValue,
                    this.headerStats,
                    el('h3', { text: STRINGS.sidebarLog }),
                    this.statusLog,
                ]),
                el('div', { class: 'game-main' }, [
                    el('div', { id: 'game-toolbar', class: 'game-toolbar' }, [
                        toolButton('tool-plant', STRINGS.toolPlant, () => this.setTool('plant')),
                        toolButton('tool-water', STRINGS.toolWater, () => this.setTool('water')),
                        toolButton('tool-harvest', STRINGS.toolHarvest, () => this.setTool('harvest')),
                        toolButton('tool-almanac', STRINGS.toolAlmanac, () => void this.openAlmanac()),
                        toolButton(
                            'tool-farmhand',
                            STRINGS.toolFarmhand,
                            () => this.openFarmhand(),
                            'farmhand_chat',
                        ),
                        toolButton('tool-pest', STRINGS.toolPest, () => this.openPestChoice()),
                        toolButton('tool-scarecrow', STRINGS.toolScarecrow, () => this.openScarecrowChoice()),
                        toolButton('tool-market', STRINGS.toolMarket, () => this.openMarket()),
                    ]),
                    this.grid,
                ]),
                el('aside', { id: 'inventory-panel', class: 'inventory-panel' }, [
                    el('h2', { text: STRINGS.inventoryTitle }),
                    el('h3', { text: STRINGS.seedsTitle }),
                    this.seedList,
                    el('h3', { text: STRINGS.produceTitle }),
                    this.produceList,
                    el('h3', { text: STRINGS.notificationsTitle }),
                    this.notifications,
                ]),
            ]),
        );

        this.render(view.state);
        this.startTicking();
    }

    unmount(): void {
        if (this.timer !== null) {
            clearInterval(this.timer);
            this.timer = null;
        }
    }

    private startTicking(): void {
        this.timer = setInterval(() => {
            if (this.state === null || this.state.game_over || this.tickInFlight) return;
            this.tickInFlight = true;
            this.act({ type: 'tick' }).finally(() => {
                this.tickInFlight = false;
            });
        }, 1000);
    }

    private setTool(tool: Tool): void {
        this.tool = tool;
        for (const id of ['tool-plant', 'tool-water', 'tool-harvest']) {
            const button = document.getElementById(id);
            if (button) button.classList.toggle('active', id === `tool-${tool}`);
        }
    }

    // One action in flight at a time: each request waits for the previous
    // one so the server sees the clicks in the order they happened.
    private act(action: GameAction, ack = false): Promise<void> {
        const run = async () => {
            try {
                const result = await this.api.sendAction(this.gameId, action, ack);
                this.state = result.state;
                this.render(result.state);
                this.handleEvents(result.events);
            } catch (err) {
                // surface instead of rethrowing: a rejected link would stall
                // the whole action queue
                this.notify(err instanceof ApiError ? err.message : String(err), 'error');
            }
        };
        this.queue = this.queue.then(run);
        return this.queue;
    }

    private notify(text: string, flavor = 'info'): void {
        this.notifications.prepend(el('li', { class: `notice notice-${flavor}`, text }));
        while (this.notifications.children.length > 12) {
            this.notifications.lastChild?.remove();
        }
    }

    private handleEvents(events: GameEvent[]): void {
        for (const event of events) {
            this.notify(eventText(event.kind, event));
            if (event.kind === 'pest_minigame_started') {
                playMinigame(
                    this.root,
                    event as unknown as MinigameRules,
                    (hits) => void this.act({ type: 'resolve_pest_minigame', payload: { hits } }),
                );
            }
            if (event.kind === 'farmhand_answered') {
                this.showFarmhandAnswer(String(event.answer));
            }
            if (event.kind === 'price_suggested') {
                this.refreshMarketModal();
            }
            if (event.kind === 'week_opened' || event.kind === 'week_closed' || event.kind === 'sold') {
                this.refreshMarketModal();
            }
            if (event.kind === 'won' || event.kind === 'lost') {
                void this.showGameOver();
            }
        }
    }

    // -- rendering --------------------------------------------------------

    private render(state: GameStateView): void {
        this.lakeValue.textContent = String(state.lake_health);
        this.lakeFill.style.height = `${Math.max(0, Math.min(100, state.lake_health))}%`;
        this.lakeFill.classList.toggle('lake-low', state.lake_health <= 25);

        clear(this.headerStats);
        const stat = (id: string, label: string, value: string | number) =>
            el('div', { class: 'stat-row' }, [
                el('span', { class: 'stat-label', text: label }),
                el('span', { id, class: 'stat-value', text: String(value) }),
            ]);
        this.headerStats.append(
            stat('stat-season', 'Season', state.season),
            stat('stat-level', 'Level', state.level),
            stat('stat-xp', 'XP', state.xp),
            stat('stat-coins', 'Coins', state.coins),
            stat('stat-tick', 'Day', state.tick),
        );

        clear(this.statusLog);
        for (const line of state.status_log.slice(-8).reverse()) {
            this.statusLog.append(el('li', { text: line }));
        }

        this.renderGrid(state);
        this.renderInventory(state);

        if (state.game_over && document.getElementById('game-over') === null) {
            void this.showGameOver();
        }
    }

    private renderGrid(state: GameStateView): void {
        clear(this.grid);
        for (const tile of state.tiles) {
            const pestHere =
                state.pest !== null && state.pest.row === tile.row && state.pest.col === tile.col;
            const button = el('button', {
                class: 'tile' + (tile.obstructed ? ' tile-obstructed' : ''),
                'data-row': String(tile.row),
                'data-col': String(tile.col),
                onclick: () => this.onTileClick(tile, pestHere),
            });
            button.textContent = this.tileArt(tile, pestHere);
            if (tile.crop && tile.watered_until >= state.tick) {
                button.classList.add('tile-watered');
            }
            this.grid.append(button);
        }
    }

    private tileArt(tile: TileView, pestHere: boolean): string {
        if (pestHere) return '\u{1F41B}';
        if (tile.obstructed) return '\u{1FAA8}';
        if (!tile.crop) return '';
        if (tile.growth_stage === 'mature') return CROP_ART[tile.crop] ?? '\u{1F33F}';
        return STAGE_ART[tile.growth_stage ?? 'seedling'];
    }

    private renderInventory(state: GameStateView): void {
        clear(this.seedList);
        for (const [crop, count] of Object.entries(state.seeds)) {
            this.seedList.append(
                el('button', {
                    class: 'seed-choice' + (crop === this.seedChoice ? ' active' : ''),
                    'data-crop': crop,
                    text: `${CROP_ART[crop] ?? ''} ${crop}: ${count}`,
                    onclick: () => {
                        this.seedChoice = crop;
                        this.renderInventory(this.state ?? state);
                    },
                }),
            );
        }
        clear(this.produceList);
        for (const [crop, count] of Object.entries(state.produce)) {
            this.produceList.append(
                el('div', {
                    class: 'produce-row',
                    'data-crop': crop,
                    text: `${CROP_ART[crop] ?? ''} ${crop}: ${count}`,
                }),
            );
        }
    }

    private onTileClick(tile: TileView, pestHere: boolean): void {
        if (pestHere) {
            this.openPestChoice();
            return;
        }
        if (this.tool === 'plant') {
            void this.act({
                type: 'plant',
                payload: { row: tile.row, col: tile.col, crop: this.seedChoice },
            });
        } else if (this.tool === 'water') {
            void this.act({ type: 'water', payload: { row: tile.row, col: tile.col } });
        } else {
            void this.act({ type: 'harvest', payload: { row: tile.row, col: tile.col } });
        }
    }

    // -- modals -----------------------------------------------------------

    private modal(id: string, children: Array<Node | string>): HTMLElement {
        document.getElementById(id)?.remove();
        const overlay = el('div', { class: 'modal-backdrop', id });
        const card = el('div', { class: 'modal' }, children);
        card.prepend(
            el('button', {
                class: 'modal-close',
                text: '✕',
                onclick: () => overlay.remove(),
            }),
        );
        overlay.append(card);
        this.root.append(overlay);
        return overlay;
    }

    private async openAlmanac(topic?: string): Promise<void> {
        let entry;
        try {
            entry = await this.api.getAlmanac(this.gameId, topic);
        } catch (err) {
            if (err instanceof ApiError && err.code === 'feature_locked') {
                this.modal('almanac-modal', [
                    el('h2', { text: STRINGS.almanacTitle }),
                    el('p', { text: STRINGS.almanacLocked }),
                ]);
                return;
            }
            throw err;
        }
        const body: Array<Node | string> = [el('h2', { text: STRINGS.almanacTitle })];
        if (entry.kind === 'index') {
            const topics = entry.topics as string[];
            body.push(
                el('div', { class: 'almanac-topics' },
                    topics.map((name) =>
                        el('button', {
                            class: 'almanac-topic',
                            text: name,
                            onclick: () => void this.openAlmanac(name),
                        }),
                    ),
                ),
            );
        } else if (entry.kind === 'season') {
            body.push(
                el('h3', { text: String(entry.topic) }),
                el('p', { text: `Grows then: ${(entry.in_season_crops as string[]).join(', ')}` }),
            );
        } else {
            body.push(
                el('h3', { text: `${CROP_ART[String(entry.topic)] ?? ''} ${entry.topic}` }),
                el('p', { text: `Seasons: ${(entry.seasons as string[]).join(', ')}` }),
                el('p', { text: `Days to grow: ${entry.growth_ticks}` }),
                el('p', { text: `Harvest: ${entry.yield_units} each, ${entry.xp} XP` }),
                el('p', { text: `Usual price: ${entry.base_price} coins` }),
            );
        }
        body.push(el('p', { class: 'almanac-hint', text: entry.hint }));
        this.modal('almanac-modal', body);
    }

    private openFarmhand(): void {
        const input = el('input', {
            id: 'farmhand-question',
            placeholder: STRINGS.farmhandPlaceholder,
        });
        const answerPane = el('p', { id: 'farmhand-answer', class: 'farmhand-answer' });
        this.modal('farmhand-modal', [
            el('h2', { text: STRINGS.farmhandTitle }),
            input,
            el('button', {
                id: 'farmhand-ask',
                class: 'primary',
                text: STRINGS.farmhandAsk,
                onclick: () => void this.askFarmhand(input.value),
            }),
            answerPane,
        ]);
    }

    private async askFarmhand(question: string): Promise<void> {
        if (!question.trim()) return;
        const ok = await confirmAiUse(
            this.root,
            STRINGS.toolFarmhand,
            this.aiCosts['farmhand_chat'] ?? 0,
        );
        if (!ok) return;
        await this.act({ type: 'farmhand_chat', payload: { question } }, true);
    }

    private showFarmhandAnswer(answer: string): void {
        const pane = document.getElementById('farmhand-answer');
        if (pane) {
            pane.textContent = answer;
        } else {
            this.notify(answer);
        }
    }

    private openPestChoice(): void {
        this.modal('pest-modal', [
            el('h2', { text: STRINGS.toolPest }),
            el('button', {
                id: 'pest-minigame-button',
                text: 'Whack it myself (free)',
                onclick: () => {
                    document.getElementById('pest-modal')?.remove();
                    void this.act({ type: 'start_pest_minigame' });
                },
            }),
            el('button', {
                id: 'pest-craft-button',
                text: 'Craft a pesticide from crops (free)',
                onclick: () => {
                    document.getElementById('pest-modal')?.remove();
                    void this.act({ type: 'craft_pesticide' });
                },
            }),
            el('button', {
                id: 'pest-ai-button',
                class: 'ai-button',
                text: `AI pest control (−${this.aiCosts['pest_control'] ?? '?'} lake water)`,
                onclick: () => void this.aiPestControl(),
            }),
        ]);
    }

    private async aiPestControl(): Promise<void> {
        const ok = await confirmAiUse(
            this.root,
            'AI pest control',
            this.aiCosts['pest_control'] ?? 0,
        );
        document.getElementById('pest-modal')?.remove();
        if (!ok) return;
        await this.act({ type: 'ai_pest_control' }, true);
    }

    private openScarecrowChoice(): void {
        this.modal('scarecrow-modal', [
            el('h2', { text: STRINGS.scarecrowTitle }),
            el('button', {
                id: 'scarecrow-draw-button',
                text: STRINGS.scarecrowDraw,
                onclick: () => {
                    document.getElementById('scarecrow-modal')?.remove();
                    openSketchPad(this.root, (ref) => {
                        void this.act({ type: 'place_scarecrow', payload: { drawing_ref: ref } });
                    });
                },
            }),
            el('button', {
                id: 'scarecrow-ai-button',
                class: 'ai-button',
                text: `${STRINGS.scarecrowAi} (−${this.aiCosts['scarecrow_image'] ?? '?'} lake water)`,
                onclick: () => void this.aiScarecrow(),
            }),
        ]);
    }

    private async aiScarecrow(): Promise<void> {
        const ok = await confirmAiUse(
            this.root,
            STRINGS.toolScarecrow,
            this.aiCosts['scarecrow_image'] ?? 0,
        );
        document.getElementById('scarecrow-modal')?.remove();
        if (!ok) return;
        await this.act({ type: 'ai_scarecrow' }, true);
    }

    private openMarket(): void {
        this.modal('market-modal', []);
        this.refreshMarketModal();
    }

    private refreshMarketModal(): void {
        const overlay = document.getElementById('market-modal');
        if (!overlay || this.state === null) return;
        const card = overlay.querySelector('.modal') as HTMLElement;
        const state = this.state;
        clear(card);
        card.append(
            el('button', {
                class: 'modal-close',
                text: '✕',
                onclick: () => overlay.remove(),
            }),
            el('h2', { text: STRINGS.marketTitle }),
        );

        if (state.market_week === null) {
            card.append(
                el('p', { text: STRINGS.marketClosed }),
                el('button', {
                    id: 'market-open-button',
                    class: 'primary',
                    text: STRINGS.marketOpen,
                    onclick: () => void this.act({ type: 'open_market_week' }),
                }),
            );
        } else {
            const week = state.market_week;
            const rows = el('div', { class: 'market-rows' });
            for (const [crop, price] of Object.entries(week.player_prices)) {
                const priceInput = el('input', {
                    class: 'price-input',
                    'data-crop': crop,
                    type: 'number',
                    min: '1',
                });
                priceInput.value = String(price);
                rows.append(
                    el('div', { class: 'market-row', 'data-crop': crop }, [
                        el('span', {
                            class: 'market-crop',
                            text: `${CROP_ART[crop] ?? ''} ${crop} (have ${state.produce[crop] ?? 0})`,
                        }),
                        priceInput,
                        el('button', {
                            class: 'price-set',
                            'data-crop': crop,
                            text: 'Set',
                            onclick: () =>
                                void this.act({
                                    type: 'set_price',
                                    payload: { crop, price: Number(priceInput.value) },
                                }),
                        }),
                        el('button', {
                            class: 'price-suggest ai-button',
                            'data-crop': crop,
                            text: `${STRINGS.marketSuggest} (−${this.aiCosts['price_suggestion'] ?? '?'})`,
                            onclick: () => void this.aiPriceTip(crop),
                        }),
                    ]),
                );
            }
            card.append(
                rows,
                el('button', {
                    id: 'market-sell-button',
                    class: 'primary',
                    text: STRINGS.marketSell,
                    onclick: () => void this.act({ type: 'sell' }),
                }),
            );
        }

        const report = el('div', { id: 'last-week-report', class: 'week-report' });
        report.append(el('h3', { text: STRINGS.marketLastWeek }));
        if (state.last_week_report === null || Object.keys(state.last_week_report).length === 0) {
            report.append(el('p', { text: STRINGS.marketNoReport }));
        } else {
            for (const [crop, line] of Object.entries(state.last_week_report)) {
                report.append(
                    el('p', {
                        class: 'report-line',
                        'data-crop': crop,
                        text: `${crop}: ${line.units_sold} sold at ${line.price} coins`,
                    }),
                );
            }
        }
        card.append(report);
    }

    private async aiPriceTip(crop: string): Promise<void> {
        const ok = await confirmAiUse(
            this.root,
            STRINGS.marketSuggest,
            this.aiCosts['price_suggestion'] ?? 0,
        );
        if (!ok) return;
        await this.act({ type: 'ai_price_suggestion', payload: { crop } }, true);
    }

    private async showGameOver(): Promise<void> {
        if (document.getElementById('game-over')) return;
        this.unmount();
        let score: Score | null = null;
        try {
            score = (await this.api.getGameState(this.gameId)).score;
        } catch {
            // keep the overlay even if the score fetch fails
        }
        const won = this.state?.outcome === 'won';
        const body: Array<Node | string> = [
            el('h2', { text: won ? STRINGS.gameOverWon : STRINGS.gameOverLost }),
        ];
        if (score) {
            const aiTotal = Object.values(score.ai_actions).reduce((a, b) => a + b, 0);
            body.push(
                el('p', { id: 'final-score', text:
                    `Coins: ${score.coins} · XP: ${score.xp} · ` +
                    `Levels finished: ${score.levels_completed} · ` +
                    `Lake left: ${score.lake_health} · AI helpers used: ${aiTotal}` }),
            );
        }
        body.push(
            el('button', {
                id: 'play-again',
                class: 'primary',
                text: STRINGS.playAgain,
                onclick: () => window.location.reload(),
            }),
        );
        this.modal('game-over', body);
    }
}
