/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const faulhaber_poly: (a: number, b: number) => [number, number, number, number];
export const lattice_families: (a: number, b: number, c: number) => [number, number, number, number];
export const salie_table: (a: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
