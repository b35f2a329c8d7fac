// Typed client for the backend JSON API.
//
// The browser never computes a footprint or a game rule itself: every
// number on screen comes out of one of these calls. The one rule the
// client does enforce is the AI-usage gate — actions that drink from the
// community lake are refused here unless the caller has already confirmed
// the usage warning (ack === true).

export type ResourceKey = 'water' | 'carbon' | 'energy';
export type BudgetState = 'no_limit' | 'under' | 'approaching' | 'exceeded';

export interface ResourceStatus {
    resource: ResourceKey;
    total: number;
    limit: number | null;
    fill: number;
    display_fraction: number;
    status: BudgetState;
}

export interface Totals {
    water_ml: number;
    carbon_g: number;
    energy_wh: number;
}

export interface Limits {
    water_ml: number | null;
    carbon_g: number | null;
    energy_wh: number | null;
}

export interface SessionView {
    id: string;
    totals: Totals;
    limits: Limits;
    statuses: Record<ResourceKey, ResourceStatus>;
    prompt_count: number;
}

export interface Relatable {
    water_drops: number;
    co2_balloons: number;
    led_minutes: number;
    water_display: string;
    carbon_display: string;
    energy_display: string;
    summary: string;
}

export interface Footprint {
    energy_wh: number;
    water_ml: number;
    carbon_g: number;
    latency_s: number;
    label: string;
}

export interface Transition {
    resource: ResourceKey;
    from: BudgetState;
    to: BudgetState;
}

export interface PromptResponse {
    prompt_id: string;
    response_text: string;
    refused: boolean;
    provider: string;
    usage: { input_tokens: number; output_tokens: number; latency_s: number };
    footprint: Footprint;
    relatable: Relatable;
    totals: Totals;
    statuses: Record<ResourceKey, ResourceStatus>;
    transitions: Transition[];
}

export interface TileView {
    row: number;
    col: number;
    obstructed: boolean;
    crop: string | null;
    planted_tick: number;
    progress: number;
    growth_stage: 'seedling' | 'growing' | 'mature' | null;
    watered_until: number;
    pest_damaged: boolean;
}

export interface MarketWeekView {
    week_index: number;
    opened_tick: number;
    closes_at_tick: number;
    reference_prices: Record<string, number>;
    player_prices: Record<string, number>;
}

export interface WeekReport {
    [crop: string]: { units_sold: number; price: number };
}

export interface GameStateView {
    seed: number;
    tick: number;
    season: string;
    lake_health: number;
    community_drained: number;
    ai_spent: number;
    xp: number;
    level: number;
    coins: number;
    seeds: Record<string, number>;
    produce: Record<string, number>;
    tiles: TileView[];
    pest: { row: number; col: number; since_tick: number } | null;
    bird: { since_tick: number } | null;
    scarecrow_active: boolean;
    scarecrow_ref: string | null;
    market_week: MarketWeekView | null;
    week_sales: WeekReport;
    last_week_report: WeekReport | null;
    ai_action_counts: Record<string, number>;
    status_log: string[];
    game_over: boolean;
    outcome: 'won' | 'lost' | null;
}

export interface Score {
    coins: number;
    xp: number;
    lake_health: number;
    level: number;
    levels_completed: number;
    ai_actions: Record<string, number>;
    outcome: 'in_progress' | 'won' | 'lost';
}

export interface GameView {
    id: string;
    state: GameStateView;
    score: Score;
    ai_costs: Record<string, number>;
}

export interface GameEvent {
    kind: string;
    tick: number;
    [key: string]: unknown;
}

export interface ActionResponse {
    events: GameEvent[];
    state: GameStateView;
}

export interface AlmanacEntry {
    kind: 'season' | 'crop' | 'index';
    hint: string;
    [key: string]: unknown;
}

export type GameAction =
    | { type: 'tick' }
    | { type: 'plant'; payload: { row: number; col: number; crop: string } }
    | { type: 'water'; payload: { row: number; col: number } }
    | { type: 'harvest'; payload: { row: number; col: number } }
    | { type: 'start_pest_minigame' }
    | { type: 'resolve_pest_minigame'; payload: { hits: number } }
    | { type: 'craft_pesticide' }
    | { type: 'place_scarecrow'; payload: { drawing_ref: string } }
    | { type: 'open_market_week' }
    | { type: 'set_price'; payload: { crop: string; price: number } }
    | { type: 'sell' }
    | { type: 'farmhand_chat'; payload: { question: string } }
    | { type: 'ai_pest_control' }
    | { type: 'ai_scarecrow' }
    | { type: 'ai_price_suggestion'; payload: { crop: string } };

// Action kinds that spend lake water and therefore need a confirmed
// usage warning before they may leave the browser.
export const AI_ACTIONS = new Set([
    'farmhand_chat',
    'ai_pest_control',
    'ai_scarecrow',
    'ai_price_suggestion',
]);

export class ApiError extends Error {
    status: number;
    code: string;

    constructor(status: number, code: string, message: string) {
        super(message);
        this.name = 'ApiError';
        this.status = status;
        this.code = code;
    }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    private baseUrl: string;
    private fetchFn: FetchLike;

    constructor(baseUrl = '', fetchFn?: FetchLike) {
        this.baseUrl = baseUrl.replace(/\/$/, '');
        this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const init: RequestInit = { method, headers: {} };
        if (body !== undefined) {
            init.headers = { 'Content-Type': 'application/json' };
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchFn(this.baseUrl + path, init);
        if (!response.ok) {
            let code = 'http_error';
            let message = `request failed with status ${response.status}`;
            try {
                const data = await response.json();
                if (data && data.detail && typeof data.detail === 'object') {
                    code = data.detail.code ?? code;
                    message = data.detail.message ?? message;
                }
            } catch {
                // non-JSON error body; keep the generic message
            }
            throw new ApiError(response.status, code, message);
        }
        return (await response.json()) as T;
    }

    health(): Promise<{ status: string; provider_mode: string; version: string }> {
        return this.request('GET', '/api/health');
    }

    createSession(limits?: Partial<Limits>): Promise<SessionView> {
        const body = limits ? { limits } : {};
        return this.request('POST', '/api/sessions', body);
    }

    getSession(sessionId: string): Promise<SessionView> {
        return this.request('GET', `/api/sessions/${sessionId}`);
    }

    submitPrompt(sessionId: string, prompt: string): Promise<PromptResponse> {
        return this.request('POST', `/api/sessions/${sessionId}/prompt`, { prompt });
    }

    setLimits(sessionId: string, limits: Limits): Promise<SessionView> {
        return this.request('PUT', `/api/sessions/${sessionId}/limits`, limits);
    }

    createGame(seed?: number): Promise<{ id: string; state: GameStateView }> {
        const body = seed === undefined ? {} : { seed };
        return this.request('POST', '/api/games', body);
    }

    getGameState(gameId: string): Promise<GameView> {
        return this.request('GET', `/api/games/${gameId}/state`);
    }

    getAlmanac(gameId: string, topic?: string): Promise<AlmanacEntry> {
        const query = topic ? `?topic=${encodeURIComponent(topic)}` : '';
        return this.request('GET', `/api/games/${gameId}/almanac${query}`);
    }

    sendAction(gameId: string, action: GameAction, ack = false): Promise<ActionResponse> {
        if (AI_ACTIONS.has(action.type) && !ack) {
            throw new ApiError(
                0,
                'warning_not_confirmed',
                `${action.type} uses lake water and needs a confirmed usage warning`,
            );
        }
        const body = {
            type: action.type,
            payload: 'payload' in action ? action.payload : {},
            ack_warning: ack,
        };
        return this.request('POST', `/api/games/${gameId}/actions`, body);
    }
}
