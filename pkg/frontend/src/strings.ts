// Every sentence a child reads lives here, so the reading level can be
// tuned in one place. Keep sentences short and concrete; youngest
// players are around six years old.

export const STRINGS = {
    appTitle: 'EcoPrompt',
    calculatorTab: 'Ask the AI',
    gameTab: 'Farm Game',

    tutorialSteps: [
        {
            title: 'Your question goes on a trip',
            art: '\u{1F4F1} ➡ \u{1F3E2}',
            text: 'When you ask an AI a question, it leaves your device and travels to a big building full of computers called a data center.',
        },
        {
            title: 'Computers use electricity',
            art: '\u{1F3E2} ➡ ⚡',
            text: 'The computers work hard to write your answer. Working hard uses electricity, and making electricity can put carbon into the air.',
        },
        {
            title: 'Hot computers need water',
            art: '\u{1F525} ➡ \u{1F4A7}',
            text: 'All that work makes the computers hot. Data centers cool them down with water - water that comes from rivers and lakes near by.',
        },
        {
            title: 'Every question counts',
            art: '\u{1F4A7} \u{1F388} \u{1F4A1}',
            text: 'So every question costs a little water, a little energy, and a little carbon. This app shows you how much, every time you ask.',
        },
    ],
    tutorialNext: 'Next',
    tutorialSkip: 'Skip',
    tutorialDone: "Let's go!",

    promptPlaceholder: 'Type your question for the AI here...',
    askButton: 'Ask AI',
    emptyPrompt: 'Type a question first!',
    thinking: 'The AI is thinking...',
    lastCostTitle: 'What your last question cost',
    waterLabel: 'Water',
    carbonLabel: 'Carbon',
    energyLabel: 'Energy',
    detailsToggle: 'Exact numbers',
    totalsTitle: 'Everything you used this visit',
    limitsTitle: 'My limits',
    limitsHelp: 'Pick how much you want to use. Going over never blocks you - the bar just turns red.',
    limitsSave: 'Save limits',
    limitInvalid: 'Limits must be numbers bigger than zero.',
    noLimit: 'no limit yet',
    statusWords: {
        no_limit: 'no limit',
        under: 'doing fine',
        approaching: 'getting close',
        exceeded: 'over your limit',
    } as Record<string, string>,

    sidebarLake: 'Community lake',
    sidebarLog: 'Farm news',
    toolPlant: 'Plant',
    toolWater: 'Water',
    toolHarvest: 'Harvest',
    toolAlmanac: 'Almanac',
    toolFarmhand: 'AI Farm Hand',
    toolPest: 'Fight pest',
    toolScarecrow: 'Scarecrow',
    toolMarket: 'Market',
    inventoryTitle: 'My things',
    seedsTitle: 'Seeds',
    produceTitle: 'Harvested crops',
    notificationsTitle: 'What just happened',

    warningTitle: 'AI Usage Warning',
    warningBody: (kind: string, cost: number) =>
        `${kind} is an AI helper. Using it will drink ${cost} water from the community lake that everyone shares. Do it anyway?`,
    warningConfirm: 'Yes, use the AI',
    warningCancel: 'No, I will do it myself',

    farmhandTitle: 'AI Farm Hand',
    farmhandPlaceholder: 'Ask the farm hand anything about farming...',
    farmhandAsk: 'Ask',

    almanacTitle: 'Farmers’ Almanac',
    almanacLocked: 'The almanac unlocks at level 2.',

    minigameTitle: 'Whack the pest!',
    minigameHelp: 'Tap the bug as fast as you can before time runs out.',
    minigameHit: 'Tap!',
    minigameResult: (hits: number, needed: number) =>
        hits >= needed ? 'You got it!' : `Only ${hits} taps - the pest is still there. Try again or craft a pesticide.`,

    scarecrowTitle: 'Scare the bird away',
    scarecrowDraw: 'Draw my own scarecrow (free)',
    scarecrowAi: 'Ask the AI to draw one',
    sketchTitle: 'Draw your scarecrow',
    sketchUse: 'Put it on the farm',
    sketchClear: 'Start over',

    marketTitle: 'Market',
    marketOpen: 'Open the market for a week',
    marketClosed: 'The market is closed right now.',
    marketSell: 'Sell everything at my prices',
    marketSuggest: 'AI price tip',
    marketLastWeek: 'Last week you sold',
    marketNoReport: 'No sales report yet.',

    gameOverWon: 'You did it! You reached the top level and the lake is still alive.',
    gameOverLost: 'The lake ran dry. The whole village loses when the water is gone.',
    playAgain: 'Start a new farm',
};

// One-line notification per game event kind. Unknown kinds fall back to
// the kind name so new server events still surface.
export function eventText(kind: string, ev: Record<string, unknown>): string {
    switch (kind) {
        case 'planted':
            return `Planted ${ev.crop}.`;
        case 'watered':
            return 'Watered a tile.';
        case 'crop_matured':
            return `Your ${ev.crop} is ready to harvest!`;
        case 'harvested':
            return `Harvested ${ev.units} ${ev.crop} (+${ev.xp_gained} XP).`;
        case 'level_up':
            return `Level up! You are now level ${ev.level}.`;
        case 'drained':
            return `Neighbors used ${ev.amount} lake water.`;
        case 'lake_spent':
            return `AI helper drank ${ev.amount} lake water.`;
        case 'pest_spawned':
            return 'A pest showed up on your farm!';
        case 'pest_minigame_started':
            return 'Pest fight started!';
        case 'pest_minigame_failed':
            return 'The pest got away this time.';
        case 'pest_cleared':
            return 'The pest is gone!';
        case 'pesticide_crafted':
            return 'You crafted a pesticide from your crops.';
        case 'pest_damage':
            return 'The pest nibbled a crop. It will give less at harvest.';
        case 'bird_arrived':
            return 'A hungry bird is circling your farm!';
        case 'bird_stole':
            return 'The bird ate part of your harvest!';
        case 'scarecrow_placed':
            return 'A scarecrow now guards your farm.';
        case 'farmhand_answered':
            return 'The farm hand answered you.';
        case 'week_opened':
            return 'The market is open this week!';
        case 'week_closed':
            return 'The market week is over.';
        case 'price_set':
            return `You set ${ev.crop} to ${ev.price} coins.`;
        case 'price_suggested':
            return `The AI suggests selling ${ev.crop} at ${ev.price} coins.`;
        case 'sold':
            return `Sold ${ev.units} ${ev.crop} for ${ev.coins_gained} coins.`;
        case 'sold_nothing':
            return 'Nothing to sell yet.';
        case 'won':
            return STRINGS.gameOverWon;
        case 'lost':
            return STRINGS.gameOverLost;
        default:
            return kind.replace(/_/g, ' ');
    }
}
