/* tslint:disable */
/* eslint-disable */

/**
 * A random geometric graph held in memory, ready to be partitioned.
 */
export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Cut fraction for every power-of-two batch size up to the node count,
     * as `[δ0, cut0, δ1, cut1, ...]`.
     */
    delta_sweep(algorithm: string, k: number, seed: number): Float64Array;
    /**
     * Edges as `[u0, v0, u1, v1, ...]` with `u < v`.
     */
    edges(): Uint32Array;
    /**
     * Generates `2^log_n` points; at most 2^16 to keep the page responsive.
     */
    constructor(log_n: number, seed: number);
    /**
     * Partitions the graph with `algorithm` (heistream, fennel, refennel,
     * ldg or hashing).
     */
    partition(algorithm: string, k: number, delta: number, passes: number, seed: number): PartitionView;
    /**
     * Point coordinates as `[x0, y0, x1, y1, ...]` in the unit square.
     */
    points(): Float32Array;
    readonly node_count: number;
}

/**
 * Outcome of one partitioning run.
 */
export class PartitionView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly balance: number;
    /**
     * Block of every point, in point order.
     */
    readonly blocks: Uint32Array;
    readonly cut_fraction: number;
    readonly edge_cut: number;
    readonly pass_cuts: Float64Array;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_partitionview_free: (a: number, b: number) => void;
    readonly demo_delta_sweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly demo_edges: (a: number) => [number, number];
    readonly demo_new: (a: number, b: number) => [number, number, number];
    readonly demo_node_count: (a: number) => number;
    readonly demo_partition: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly demo_points: (a: number) => [number, number];
    readonly partitionview_balance: (a: number) => number;
    readonly partitionview_blocks: (a: number) => [number, number];
    readonly partitionview_cut_fraction: (a: number) => number;
    readonly partitionview_edge_cut: (a: number) => number;
    readonly partitionview_pass_cuts: (a: number) => [number, number];
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
