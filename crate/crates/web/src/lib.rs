//! Three entry points for the browser page. Each takes plain strings and
//! returns a JSON string; failures come back as `{"error": ...}`.

use qh_core::complexity::{parse_state, s_infinity, trajectory, SInfinityOptions};
use qh_core::rings::{self, RingId};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn wrap(r: Result<Value, qh_core::Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": {"kind": e.kind(), "message": e.to_string()}}).to_string(),
    }
}

/// Basis, degrees and the handle element of a ring such as `gr:2,5`.
#[wasm_bindgen]
pub fn ring_info(id: &str) -> String {
    wrap((|| {
        let rid = RingId::parse(id)?;
        let ring = rid.build()?;
        let closed = rid.closed_form_delta(&ring)?;
        let delta = ring.delta();
        let agree = closed.as_ref().is_none_or(|c| c == delta)
            && (ring.has_installed_delta() || ring.handle_element().forms_agree);
        Ok(json!({
            "ring": ring.name(),
            "labels": ring.labels(),
            "degrees": ring.degrees(),
            "tau": ring.tau(),
            "delta": ring.format(delta),
            "formulas_agree": agree,
        }))
    })())
}

/// The orbit of a state (`unit`, `pt`, or `label:coef;...`) and its limit
/// points that the orbit never reaches.
#[wasm_bindgen]
pub fn orbit(id: &str, from: &str, kmax: usize) -> String {
    wrap((|| {
        let ring = rings::parse_ring_id(id)?;
        let z = parse_state(&ring, from)?;
        let t = trajectory(&ring, &z, kmax)?;
        let mut opts = SInfinityOptions::for_ring(&ring);
        opts.kmax = kmax;
        let s = s_infinity(&ring, &z, &opts)?;
        Ok(json!({
            "ring": ring.name(),
            "states": t.states.iter().map(|x| x.format(&ring)).collect::<Vec<_>>(),
            "cycle": t.cycle,
            "hits_zero_at": t.hits_zero_at,
            "closed": t.is_closed(),
            "limit_points": s.points.iter().map(|p| p.format(&ring)).collect::<Vec<_>>(),
            "limit_method": s.method,
        }))
    })())
}

/// dim F against its bound, plus the matrix of handle / point when the ring
/// has an invertible point class.
#[wasm_bindgen]
pub fn span_info(id: &str) -> String {
    wrap((|| {
        let ring = rings::parse_ring_id(id)?;
        let span = ring.f_span_dim();
        let a = match ring.point() {
            Some(_) => ring.a_matrix(None).ok(),
            None => None,
        };
        let pd = match &a {
            Some(m) => Some(m.is_positive_definite()?),
            None => None,
        };
        Ok(json!({
            "ring": ring.name(),
            "dim_f": span.dim,
            "bound": ring.dim_bound(),
            "a_matrix": a.as_ref().map(|m| m.to_string_rows()),
            "a_positive_definite": pd,
        }))
    })())
}
