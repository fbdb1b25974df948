//! Browser bindings for the probe-chroma solver.
//!
//! Each export takes and returns plain strings so the page needs no glue
//! beyond the generated `wasm-bindgen` module. Instances use the same text
//! format as the command-line tool; results are JSON.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use probe_chroma::format::{error_json, parse_instance, result_json, write_instance};
use probe_chroma::generators::{gen_family_instance, Family};
use probe_chroma::graph::{PartialColouring, ProbeInstance};
use probe_chroma::propagation::propagate;
use probe_chroma::solver::{solve_3col, SolverOptions};

/// Largest instance the page will generate.
pub const MAX_DEMO_ORDER: usize = 400;

fn family_from_name(name: &str) -> Option<Family> {
    Some(match name {
        "probe-p5" => Family::ProbeP5,
        "probe-p3sp1" => Family::ProbeP3sP1(1),
        "probe-p2sp1" => Family::ProbeP2sP1(1),
        "trianglefree-probe-p5" => Family::TriangleFreeProbeP5,
        _ => return None,
    })
}

fn shape(inst: &ProbeInstance) -> Value {
    let g = inst.graph();
    json!({
        "n": g.n(),
        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "probe": inst.probe_flags(),
    })
}

/// Generates an instance; returns `{instance, graph, fill_edges}` or an error object.
#[wasm_bindgen]
pub fn generate(family: &str, n: usize, density: f64, seed: u32) -> String {
    let Some(family) = family_from_name(family) else {
        return error_json(&format!("unknown family `{family}`")).to_string();
    };
    if n == 0 || n > MAX_DEMO_ORDER {
        return error_json(&format!("n must be between 1 and {MAX_DEMO_ORDER}")).to_string();
    }
    let gen = gen_family_instance(family, n, density.clamp(0.0, 1.0), u64::from(seed));
    json!({
        "instance": write_instance(&gen.instance, &[format!("seed {seed}")]),
        "graph": shape(&gen.instance),
        "fill_edges": gen.certificate.fill_edges,
    })
    .to_string()
}

/// Solves an instance given in the text format; returns the result object
/// with the parsed graph attached under `graph`.
#[wasm_bindgen]
pub fn solve(instance: &str) -> String {
    let inst = match parse_instance(instance) {
        Ok(inst) => inst,
        Err(e) => return error_json(&e.to_string()).to_string(),
    };
    match solve_3col(&inst, &SolverOptions::default()) {
        Ok(verdict) => {
            let mut out = result_json(&verdict);
            out["graph"] = shape(&inst);
            out.to_string()
        }
        Err(e) => error_json(&e.to_string()).to_string(),
    }
}

/// Runs forced-colour propagation from a partial colouring given as a JSON
/// array with `0` for uncoloured vertices.
///
/// Returns `{status: "ok", colouring, forced}` or `{status: "conflict", vertex}`.
#[wasm_bindgen]
pub fn propagate_colours(instance: &str, colours: &str) -> String {
    let inst = match parse_instance(instance) {
        Ok(inst) => inst,
        Err(e) => return error_json(&e.to_string()).to_string(),
    };
    let raw: Vec<u8> = match serde_json::from_str(colours) {
        Ok(raw) => raw,
        Err(e) => return error_json(&format!("colours: {e}")).to_string(),
    };
    let n = inst.graph().n();
    if raw.len() != n {
        return error_json(&format!("expected {n} colours, got {}", raw.len())).to_string();
    }
    let psi = match PartialColouring::from_raw(3, raw) {
        Ok(psi) => psi,
        Err(e) => return error_json(&e.to_string()).to_string(),
    };
    match propagate(inst.graph(), &psi) {
        Ok(out) => {
            let forced: Vec<usize> = (0..n).filter(|&v| !psi.is_coloured(v) && out.is_coloured(v)).collect();
            json!({ "status": "ok", "colouring": out.as_raw(), "forced": forced }).to_string()
        }
        Err(c) => json!({ "status": "conflict", "vertex": c.vertex }).to_string(),
    }
}
