// App shell: two tabs (calculator and farm game) over one API client.
// The tutorial storyboard runs once before the calculator first shows.

import { ApiClient } from './api.ts';
import { CalculatorPage } from './calculator.ts';
import { clear, el } from './dom.ts';
import { GamePage } from './game.ts';
import { STRINGS } from './strings.ts';
import { runTutorial } from './tutorial.ts';
import './style.css';

export function bootApp(root: HTMLElement, api: ApiClient = new ApiClient()): void {
    const pageHost = el('main', { id: 'page' });
    let activeGame: GamePage | null = null;

    const openCalculator = () => {
        activeGame?.unmount();
        activeGame = null;
        clear(pageHost);
        runTutorial(root, () => {
            void new CalculatorPage(api).mount(pageHost);
        });
    };

    const openGame = () => {
        activeGame?.unmount();
        clear(pageHost);
        const page = new GamePage(api);
        activeGame = page;
        void page.mount(pageHost);
    };

    const tab = (id: string, label: string, onclick: () => void) =>
        el('button', { id, class: 'tab', text: label, onclick });

    root.append(
        el('header', { class: 'app-header' }, [
            el('h1', { text: STRINGS.appTitle }),
            el('nav', {}, [
                tab('tab-calculator', STRINGS.calculatorTab, openCalculator),
                tab('tab-game', STRINGS.gameTab, openGame),
            ]),
        ]),
        pageHost,
    );
    openCalculator();
}

const appRoot = document.getElementById('app');
if (appRoot) {
    bootApp(appRoot);
}
