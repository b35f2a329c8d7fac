// In-memory stand-in for the HTTP API: tests register canned JSON per
// route and inspect exactly what the client sent. No sockets involved —
// the ApiClient gets this object's fetch function injected.

export interface Recorded {
    method: string;
    path: string;
    query: string;
    body: unknown;
}

type Handler = (body: unknown) => unknown;

export class FakeBackend {
    requests: Recorded[] = [];
    private routes = new Map<string, Handler>();
    private statuses = new Map<string, number>();

    on(method: string, path: string, handler: Handler | unknown, status = 200): void {
        const fn = typeof handler === 'function' ? (handler as Handler) : () => handler;
        this.routes.set(`${method} ${path}`, fn);
        this.statuses.set(`${method} ${path}`, status);
    }

    fail(method: string, path: string, status: number, code: string, message: string): void {
        this.routes.set(`${method} ${path}`, () => ({ detail: { code, message } }));
        this.statuses.set(`${method} ${path}`, status);
    }

    fetch = async (url: string, init?: RequestInit): Promise<Response> => {
        const method = init?.method ?? 'GET';
        const [path, query = ''] = url.split('?');
        const body = init?.body ? JSON.parse(init.body as string) : undefined;
        this.requests.push({ method, path, query, body });
        const key = `${method} ${path}`;
        const handler = this.routes.get(key);
        if (!handler) {
            return jsonResponse(404, { detail: { code: 'not_found', message: `no route ${key}` } });
        }
        return jsonResponse(this.statuses.get(key) ?? 200, handler(body));
    };

    actions(): Recorded[] {
        return this.requests.filter((r) => r.method === 'POST' && r.path.endsWith('/actions'));
    }

    actionTypes(): string[] {
        return this.actions().map((r) => (r.body as { type: string }).type);
    }
}

function jsonResponse(status: number, payload: unknown): Response {
    return new Response(JSON.stringify(payload), {
        status,
        headers: { 'Content-Type': 'application/json' },
    });
}

export function flush(): Promise<void> {
    return new Promise((resolve) => setTimeout(resolve, 0));
}
