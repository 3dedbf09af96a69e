/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_torquecurve_free: (a: number, b: number) => void;
export const __wbg_tracecolumns_free: (a: number, b: number) => void;
export const __wbg_tsacurves_free: (a: number, b: number) => void;
export const simulate: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const torque_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const torquecurve_mass: (a: number) => [number, number];
export const torquecurve_torque: (a: number) => [number, number];
export const tracecolumns_bottom_string: (a: number) => [number, number];
export const tracecolumns_encoder: (a: number) => [number, number];
export const tracecolumns_joint_deg: (a: number) => [number, number];
export const tracecolumns_motor_angle: (a: number) => [number, number];
export const tracecolumns_summary: (a: number) => [number, number];
export const tracecolumns_time: (a: number) => [number, number];
export const tracecolumns_top_string: (a: number) => [number, number];
export const tsa_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const tsacurves_contracted: (a: number) => [number, number];
export const tsacurves_helix_deg: (a: number) => [number, number];
export const tsacurves_pull_force: (a: number) => [number, number];
export const tsacurves_twist: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
