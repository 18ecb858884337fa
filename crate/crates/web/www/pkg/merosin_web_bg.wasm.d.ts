/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const bifurcation: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const classify_point: (a: number, b: number, c: number) => [number, number, number, number];
export const constants_json: () => [number, number, number, number];
export const render_basins: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
