/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const check_table: (a: number, b: number) => [number, number];
export const classify: (a: number, b: number, c: bigint, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
export const enumerate_counts: (a: number, b: number, c: number) => [number, number];
export const example_table: () => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
