//! Seeded random search for inequality violations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_with, registry, verdict_for, Bound, Side};
use crate::error::Result;
use crate::eval::{EvalContext, OrderPair};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Entries to test; empty means the whole catalog.
    pub ids: Vec<String>,
    /// Samples per entry.
    pub samples: usize,
    pub seed: u64,
    pub x_max: f64,
    /// Range for μ (and for ν on targets that depend on ν only).
    pub mu_range: (f64, f64),
    /// Also evaluate sides outside their validity region (points are drawn without domain rejection).
    pub include_out_of_domain: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ids: Vec::new(),
            samples: 1000,
            seed: 0,
            x_max: 60.0,
            mu_range: (-3.0, 15.0),
            include_out_of_domain: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplePoint {
    pub mu: f64,
    pub nu: f64,
    pub x: f64,
    pub y: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub id: String,
    pub side: Side,
    pub point: SamplePoint,
    pub domain_ok: bool,
    /// Signed relative margin; negative means the inequality fails.
    pub rel_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepFailure {
    pub id: String,
    pub point: SamplePoint,
    pub error: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub evaluated: usize,
    pub per_id: BTreeMap<String, usize>,
    /// Entries for which no admissible point was found.
    pub unsampled: Vec<String>,
    pub violations: Vec<Violation>,
    pub failures: Vec<SweepFailure>,
    pub equality_hits: usize,
    pub near_boundary: usize,
    /// Smallest relative margin seen per entry.
    pub min_rel_margin: BTreeMap<String, f64>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.failures.is_empty() && self.unsampled.is_empty()
    }
}

const SPECIAL_NU: [f64; 7] = [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
const SPECIAL_MU: [f64; 5] = [-1.5, -1.0, -0.5, 0.0, 1.0];

fn propose(rng: &mut ChaCha8Rng, b: &dyn Bound, cfg: &SweepConfig) -> OrderPair {
    let (lo, hi) = cfg.mu_range;
    if b.target().nu_only() {
        let nu = if rng.gen_bool(0.15) {
            SPECIAL_NU[rng.gen_range(0..SPECIAL_NU.len())]
        } else {
            rng.gen_range(lo..hi)
        };
        return OrderPair { mu: nu, nu };
    }
    let mu = if rng.gen_bool(0.1) {
        SPECIAL_MU[rng.gen_range(0..SPECIAL_MU.len())]
    } else {
        rng.gen_range(lo..hi)
    };
    let nu = if rng.gen_bool(0.15) {
        SPECIAL_NU[rng.gen_range(0..SPECIAL_NU.len())]
    } else {
        // roughly the band −μ−3 < ν < μ+1 where the series terms are positive
        let a = (-mu - 3.0).min(mu + 1.0);
        let z = mu + 1.0;
        if z - a > 1e-6 {
            rng.gen_range(a..z)
        } else {
            a
        }
    };
    OrderPair { mu, nu }
}

fn draw_x(rng: &mut ChaCha8Rng, x_max: f64) -> f64 {
    if rng.gen_bool(0.5) {
        (rng.gen_range((1e-3f64).ln()..x_max.ln())).exp()
    } else {
        x_max * (1.0 - rng.gen::<f64>())
    }
}

fn draw_point(rng: &mut ChaCha8Rng, b: &dyn Bound, cfg: &SweepConfig) -> Option<SamplePoint> {
    let mut p = None;
    for _ in 0..10_000 {
        let q = propose(rng, b, cfg);
        if cfg.include_out_of_domain || verdict_for(b, q).any_valid() {
            p = Some(q);
            break;
        }
    }
    let p = p?;
    let (x, y) = if b.target().needs_y() {
        let mut x = draw_x(rng, cfg.x_max);
        if x >= cfg.x_max {
            x = 0.5 * cfg.x_max;
        }
        let y = x + (cfg.x_max - x) * (1.0 - rng.gen::<f64>());
        (x, Some(y))
    } else {
        (draw_x(rng, cfg.x_max), None)
    };
    Some(SamplePoint {
        mu: p.mu,
        nu: p.nu,
        x,
        y: y.filter(|&y| y > x),
    })
    .filter(|s| !b.target().needs_y() || s.y.is_some())
}

/// Samples every requested entry and reports sides that fail by more than the guard band.
///
/// Sampling is sequential from one seeded stream; evaluation runs in
/// parallel and results are merged in sample order, so reports are reproducible.
pub fn sweep(ctx: &EvalContext, cfg: &SweepConfig) -> Result<SweepReport> {
    let reg = registry();
    let bounds: Vec<&dyn Bound> = if cfg.ids.is_empty() {
        reg.iter().map(|b| b.as_ref()).collect()
    } else {
        cfg.ids
            .iter()
            .map(|id| reg.get(id).map(|b| b.as_ref()))
            .collect::<Result<_>>()?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SweepReport::default();
    let mut jobs = Vec::new();
    for b in &bounds {
        let mut drawn = 0;
        for _ in 0..cfg.samples {
            if let Some(pt) = draw_point(&mut rng, *b, cfg) {
                jobs.push((*b, pt));
                drawn += 1;
            }
        }
        if drawn == 0 {
            report.unsampled.push(b.id().to_string());
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(b, pt)| {
            let p = OrderPair {
                mu: pt.mu,
                nu: pt.nu,
            };
            evaluate_with(ctx, *b, p, pt.x, pt.y, cfg.include_out_of_domain)
        })
        .collect();
    for ((b, pt), res) in jobs.iter().zip(results) {
        let id = b.id().to_string();
        match res {
            Ok(ev) => {
                report.evaluated += 1;
                *report.per_id.entry(id.clone()).or_default() += 1;
                report.equality_hits += ev.equality_hit as usize;
                report.near_boundary += ev.near_boundary as usize;
                for (side, rel) in [
                    (Side::Lower, ev.rel_margin_lower),
                    (Side::Upper, ev.rel_margin_upper),
                ] {
                    let Some(rel) = rel else { continue };
                    let m = report
                        .min_rel_margin
                        .entry(id.clone())
                        .or_insert(f64::INFINITY);
                    *m = m.min(rel);
                    if ev.violated_sides.contains(&side) {
                        report.violations.push(Violation {
                            id: id.clone(),
                            side,
                            point: *pt,
                            domain_ok: ev.domain_ok,
                            rel_margin: rel,
                        });
                    }
                }
            }
            Err(e) => report.failures.push(SweepFailure {
                id,
                point: *pt,
                error: e.to_string(),
            }),
        }
    }
    Ok(report)
}
