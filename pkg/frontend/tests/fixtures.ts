// Canned API payloads with deliberately odd numbers, so a test that sees
// "7.77" on screen knows it came from the payload and not from any math
// the client did on its own.

import type {
    GameStateView,
    GameView,
    PromptResponse,
    ResourceKey,
    ResourceStatus,
    Score,
    SessionView,
    TileView,
} from '../src/api.ts';

export const AI_COSTS = {
    farmhand_chat: 2,
    pest_control: 5,
    scarecrow_image: 8,
    price_suggestion: 3,
};

export function makeStatus(
    resource: ResourceKey,
    overrides: Partial<ResourceStatus> = {},
): ResourceStatus {
    return {
        resource,
        total: 0,
        limit: null,
        fill: 0,
        display_fraction: 0,
        status: 'no_limit',
        ...overrides,
    };
}

export function makeSession(overrides: Partial<SessionView> = {}): SessionView {
    return {
        id: 'sess1',
        totals: { water_ml: 0, carbon_g: 0, energy_wh: 0 },
        limits: { water_ml: null, carbon_g: null, energy_wh: null },
        statuses: {
            water: makeStatus('water'),
            carbon: makeStatus('carbon'),
            energy: makeStatus('energy'),
        },
        prompt_count: 0,
        ...overrides,
    };
}

export function makePromptResponse(
    overrides: Partial<PromptResponse> = {},
): PromptResponse {
    return {
        prompt_id: 'p1',
        response_text: 'Rivers flood when snow melts fast.',
        refused: false,
        provider: 'mock',
        usage: { input_tokens: 9, output_tokens: 33, latency_s: 1.325 },
        footprint: {
            energy_wh: 0.7513,
            water_ml: 1.5026,
            carbon_g: 0.30052,
            latency_s: 1.325,
            label: 'modeled estimate',
        },
        relatable: {
            water_drops: 6.0104,
            co2_balloons: 0.0120208,
            led_minutes: 4.5078,
            water_display: '6 drops',
            carbon_display: '0.01 balloons',
            energy_display: '4.5 minutes',
            summary: '6 drops of water, 0.01 balloons of CO2, and powering an LED for 4.5 minutes',
        },
        totals: { water_ml: 1.5026, carbon_g: 0.30052, energy_wh: 0.7513 },
        statuses: {
            water: makeStatus('water', { total: 1.5026 }),
            carbon: makeStatus('carbon', { total: 0.30052 }),
            energy: makeStatus('energy', { total: 0.7513 }),
        },
        transitions: [],
        ...overrides,
    };
}

export function makeTiles(): TileView[] {
    const tiles: TileView[] = [];
    for (let row = 0; row < 6; row++) {
        for (let col = 0; col < 6; col++) {
            tiles.push({
                row,
                col,
                obstructed: false,
                crop: null,
                planted_tick: 0,
                progress: 0,
                growth_stage: null,
                watered_until: 0,
                pest_damaged: false,
            });
        }
    }
    return tiles;
}

export function makeGameState(overrides: Partial<GameStateView> = {}): GameStateView {
    return {
        seed: 11,
        tick: 40,
        season: 'summer',
        lake_health: 87,
        community_drained: 6,
        ai_spent: 7,
        xp: 23,
        level: 2,
        coins: 14,
        seeds: { wheat: 3, carrot: 4, corn: 2, pumpkin: 4, turnip: 4 },
        produce: { wheat: 5, carrot: 0, corn: 1, pumpkin: 0, turnip: 0 },
        tiles: makeTiles(),
        pest: null,
        bird: null,
        scarecrow_active: false,
        scarecrow_ref: null,
        market_week: null,
        week_sales: {},
        last_week_report: null,
        ai_action_counts: { farmhand_chat: 1 },
        status_log: [
            'Welcome to your farm!',
            'The community lake is shared with every farm around.',
            'Neighbors drew 2 units from the lake.',
        ],
        game_over: false,
        outcome: null,
        ...overrides,
    };
}

export function makeScore(overrides: Partial<Score> = {}): Score {
    return {
        coins: 14,
        xp: 23,
        lake_health: 87,
        level: 2,
        levels_completed: 1,
        ai_actions: { farmhand_chat: 1, pest_control: 0, price_suggestion: 0, scarecrow_image: 0 },
        outcome: 'in_progress',
        ...overrides,
    };
}

export function makeGameView(
    state: GameStateView,
    score = makeScore(),
): GameView {
    return { id: 'g1', state, score, ai_costs: { ...AI_COSTS } };
}
