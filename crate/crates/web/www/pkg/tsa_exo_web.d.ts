/* tslint:disable */
/* eslint-disable */

/**
 * Torque-vs-mass table.
 */
export class TorqueCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly mass: Float64Array;
    readonly torque: Float64Array;
}

/**
 * Columns of a controller trace.
 */
export class TraceColumns {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bottom_string: Float64Array;
    readonly encoder: Float64Array;
    readonly joint_deg: Float64Array;
    readonly motor_angle: Float64Array;
    readonly summary: string;
    readonly time: Float64Array;
    readonly top_string: Float64Array;
}

/**
 * String geometry and transmission sampled over the twist range.
 */
export class TsaCurves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly contracted: Float64Array;
    readonly helix_deg: Float64Array;
    readonly pull_force: Float64Array;
    readonly twist: Float64Array;
}

export function simulate(max_cycles: number, motor_speed: number, stop_at: number, length: number, radius: number, pin_radius: number, ppr: number, gear_ratio: number): TraceColumns;

export function torque_curve(mass_min: number, mass_max: number, steps: number, com_distance: number, gravity: number): TorqueCurve;

export function tsa_curve(length: number, radius: number, motor_torque: number, fraction: number, samples: number): TsaCurves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_torquecurve_free: (a: number, b: number) => void;
    readonly __wbg_tracecolumns_free: (a: number, b: number) => void;
    readonly __wbg_tsacurves_free: (a: number, b: number) => void;
    readonly simulate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly torque_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly torquecurve_mass: (a: number) => [number, number];
    readonly torquecurve_torque: (a: number) => [number, number];
    readonly tracecolumns_bottom_string: (a: number) => [number, number];
    readonly tracecolumns_encoder: (a: number) => [number, number];
    readonly tracecolumns_joint_deg: (a: number) => [number, number];
    readonly tracecolumns_motor_angle: (a: number) => [number, number];
    readonly tracecolumns_summary: (a: number) => [number, number];
    readonly tracecolumns_time: (a: number) => [number, number];
    readonly tracecolumns_top_string: (a: number) => [number, number];
    readonly tsa_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly tsacurves_contracted: (a: number) => [number, number];
    readonly tsacurves_helix_deg: (a: number) => [number, number];
    readonly tsacurves_pull_force: (a: number) => [number, number];
    readonly tsacurves_twist: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
