use serde::{Deserialize, Serialize};

use super::evaluate;
use crate::error::{Error, Result};
use crate::graph::fit_loglog_slope;
use crate::rng::subseed;
use crate::schemes::{build_scheme, SchemeKind, SchemeParams};
use crate::topology::{generate, GenConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Generator settings; `n` and `seed` are replaced per size.
    pub template: GenConfig,
    pub sizes: Vec<usize>,
    pub schemes: Vec<SchemeKind>,
    pub params: SchemeParams,
    pub pair_budget: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub scheme: SchemeKind,
    pub requested_n: usize,
    pub n: usize,
    pub m: usize,
    pub gen_seed: u64,
    pub build_seed: u64,
    pub avg_table: f64,
    pub max_table: usize,
    pub avg_stretch: f64,
    pub max_stretch: f64,
    pub avg_stretch_len1: f64,
    pub violating_adjacencies: u64,
    pub augmented_avg_table: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepExponent {
    pub scheme: SchemeKind,
    pub avg_table_exponent: f64,
    pub max_table_exponent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
    pub fitted_exponents: Vec<SweepExponent>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.len() < 3 {
            return Err(Error::InvalidConfig(format!(
                "sweep needs at least 3 sizes to fit exponents, got {}",
                self.sizes.len()
            )));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("sweep sizes must be strictly ascending".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::InvalidConfig("sweep needs at least one scheme".into()));
        }
        Ok(())
    }

    pub fn gen_seed(&self, n: usize) -> u64 {
        subseed(self.seed, &format!("gen/{n}"))
    }

    pub fn build_seed(&self, kind: SchemeKind, n: usize) -> u64 {
        subseed(self.seed, &format!("build/{kind}/{n}"))
    }

    pub fn pair_seed(&self, n: usize) -> u64 {
        subseed(self.seed, &format!("pairs/{n}"))
    }
}

/// Generates one graph per size, builds and evaluates every scheme on it and
/// fits log-log exponents of table size against realized node count.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut points = Vec::new();
    for &requested in &cfg.sizes {
        let at_n = |e: Error| Error::Sweep {
            n: requested,
            source: Box::new(e),
        };
        let gen = GenConfig {
            n: requested,
            seed: cfg.gen_seed(requested),
            ..cfg.template.clone()
        };
        let g = generate(&gen).map_err(at_n)?;
        for &kind in &cfg.schemes {
            let build_seed = cfg.build_seed(kind, requested);
            let art = build_scheme(&g, kind, &cfg.params, build_seed).map_err(at_n)?;
            let ev = evaluate(&art, &g, cfg.pair_budget, cfg.pair_seed(requested)).map_err(at_n)?;
            points.push(SweepPoint {
                scheme: kind,
                requested_n: requested,
                n: g.node_count(),
                m: g.edge_count(),
                gen_seed: gen.seed,
                build_seed,
                avg_table: ev.tables.avg_entries,
                max_table: ev.tables.max_entries,
                avg_stretch: ev.stretch.avg_stretch,
                max_stretch: ev.stretch.max_stretch,
                avg_stretch_len1: ev.stretch.avg_stretch_len1,
                violating_adjacencies: ev.reinsertion.violating_adjacencies,
                augmented_avg_table: ev.reinsertion.augmented_avg_table,
            });
        }
    }
    let mut fitted = Vec::new();
    for &kind in &cfg.schemes {
        let series: Vec<&SweepPoint> = points.iter().filter(|p| p.scheme == kind).collect();
        let avg: Vec<(f64, f64)> = series.iter().map(|p| (p.n as f64, p.avg_table)).collect();
        let max: Vec<(f64, f64)> = series.iter().map(|p| (p.n as f64, p.max_table as f64)).collect();
        fitted.push(SweepExponent {
            scheme: kind,
            avg_table_exponent: fit_loglog_slope(&avg)?,
            max_table_exponent: fit_loglog_slope(&max)?,
        });
    }
    Ok(SweepReport {
        config: cfg.clone(),
        points,
        fitted_exponents: fitted,
    })
}
