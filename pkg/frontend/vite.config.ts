import { defineConfig } from 'vitest/config';

// In dev mode the backend runs separately; proxy API calls to it so the
// browser sees a single origin. The production build is static files that
// `ecoprompt serve --ui dist` mounts at / on the same origin as the API.
export default defineConfig({
    server: {
        proxy: {
            '/api': 'http://127.0.0.1:8000',
        },
    },
    test: {
        environment: 'jsdom',
    },
});
