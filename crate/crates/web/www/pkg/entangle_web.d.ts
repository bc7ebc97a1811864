/* tslint:disable */
/* eslint-disable */

/**
 * Reduced two-qubit states at one instant, scored three ways: closed form,
 * Wootters on the closed-form matrix, and Wootters on the full register.
 */
export function snapshot(kind: string, alpha: number, g_a: number, g_b: number, delta: number, gt: number): string;

/**
 * Where the correlated seed loses all pairwise entanglement, over seed
 * angle and time, for symmetric resonant sites.
 */
export function sudden_death_map(alpha_steps: number, t_steps: number, t_max: number): string;

/**
 * Squared concurrence curves for two Jaynes-Cummings sites.
 */
export function transfer_curves(kind: string, alpha: number, g_a: number, g_b: number, delta: number, gamma: number, t_max: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly snapshot: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly sudden_death_map: (a: number, b: number, c: number) => [number, number, number, number];
    readonly transfer_curves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
