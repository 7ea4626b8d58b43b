/* tslint:disable */
/* eslint-disable */

/**
 * Laws and regularity of a table given as magma JSON.
 */
export function check_table(table_json: string): string;

/**
 * Classify grades `num[i] / den` on a table at thresholds `γ < δ`,
 * both written as `p/q` or a terminating decimal.
 */
export function classify(table_json: string, den: bigint, num: BigUint64Array, gamma: string, delta: string): string;

/**
 * Labelled and up-to-isomorphism counts for one order.
 */
export function enumerate_counts(order: number, left_identity: boolean, weakly_regular: boolean): string;

/**
 * The order-4 example table as magma JSON.
 */
export function example_table(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_table: (a: number, b: number) => [number, number];
    readonly classify: (a: number, b: number, c: bigint, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly enumerate_counts: (a: number, b: number, c: number) => [number, number];
    readonly example_table: () => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
