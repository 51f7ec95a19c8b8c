/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_partitionview_free: (a: number, b: number) => void;
export const demo_delta_sweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const demo_edges: (a: number) => [number, number];
export const demo_new: (a: number, b: number) => [number, number, number];
export const demo_node_count: (a: number) => number;
export const demo_partition: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const demo_points: (a: number) => [number, number];
export const partitionview_balance: (a: number) => number;
export const partitionview_blocks: (a: number) => [number, number];
export const partitionview_cut_fraction: (a: number) => number;
export const partitionview_edge_cut: (a: number) => number;
export const partitionview_pass_cuts: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
