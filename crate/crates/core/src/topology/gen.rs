use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Preferential,
    PowerlawConfig,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Preferential => "preferential",
            Model::PowerlawConfig => "powerlaw-config",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preferential" => Ok(Model::Preferential),
            "powerlaw-config" => Ok(Model::PowerlawConfig),
            other => Err(Error::InvalidConfig(format!(
                "unknown model {other:?} (expected preferential or powerlaw-config)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub model: Model,
    /// Edges added per arriving node (preferential model).
    pub m_attach: usize,
    /// Degree exponent (configuration model).
    pub gamma: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn preferential(n: usize, m_attach: usize, seed: u64) -> Self {
        GenConfig {
            n,
            model: Model::Preferential,
            m_attach,
            gamma: 2.1,
            seed,
        }
    }

    pub fn powerlaw(n: usize, gamma: f64, seed: u64) -> Self {
        GenConfig {
            n,
            model: Model::PowerlawConfig,
            m_attach: 2,
            gamma,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.model {
            Model::Preferential => {
                if self.m_attach == 0 {
                    return Err(Error::InvalidConfig("m_attach must be >= 1".into()));
                }
                if self.n < self.m_attach + 1 {
                    return Err(Error::InvalidConfig(format!(
                        "n = {} must be at least m_attach + 1 = {}",
                        self.n,
                        self.m_attach + 1
                    )));
                }
            }
            Model::PowerlawConfig => {
                if !(self.gamma > 2.0) || !self.gamma.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "gamma must be > 2, got {}",
                        self.gamma
                    )));
                }
                if self.n < 2 {
                    return Err(Error::InvalidConfig("n must be >= 2".into()));
                }
            }
        }
        Ok(())
    }
}

pub fn generate(cfg: &GenConfig) -> Result<Graph> {
    match cfg.model {
        Model::Preferential => gen_preferential(cfg),
        Model::PowerlawConfig => gen_powerlaw_config(cfg),
    }
}

/// Preferential attachment: a complete graph on `m_attach + 1` nodes, then
/// every later node links to `m_attach` distinct existing nodes drawn with
/// probability proportional to their current degree.
pub fn gen_preferential(cfg: &GenConfig) -> Result<Graph> {
    if cfg.model != Model::Preferential {
        return Err(Error::InvalidConfig("expected the preferential model".into()));
    }
    cfg.validate()?;
    let m = cfg.m_attach;
    let n = cfg.n;
    let mut rng = rng::stream(cfg.seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // every edge endpoint once: uniform draws from here are degree-proportional
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..=m as NodeId {
        for v in u + 1..=m as NodeId {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen: Vec<NodeId> = Vec::with_capacity(m);
    for v in (m + 1) as NodeId..n as NodeId {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Ok(Graph::from_dense_edges_lenient(n, &edges))
}

/// Configuration model with a truncated discrete power-law degree sequence
/// `P(k) ∝ k^-gamma`, `1 <= k <= floor(sqrt(n))`. Stubs are paired after a
/// uniform shuffle; self-loops and repeated pairs are dropped (not redrawn)
/// and the giant component is returned, so realized `n` and `m` are smaller
/// than the nominal values.
pub fn gen_powerlaw_config(cfg: &GenConfig) -> Result<Graph> {
    if cfg.model != Model::PowerlawConfig {
        return Err(Error::InvalidConfig("expected the powerlaw-config model".into()));
    }
    cfg.validate()?;
    let n = cfg.n;
    let kmax = ((n as f64).sqrt().floor() as usize).max(1);
    let weights: Vec<f64> = (1..=kmax).map(|k| (k as f64).powf(-cfg.gamma)).collect();
    let degree_dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidConfig(format!("degree distribution: {e}")))?;
    let mut rng = rng::stream(cfg.seed);
    let mut stubs: Vec<NodeId> = Vec::new();
    for v in 0..n as NodeId {
        let k = degree_dist.sample(&mut rng) + 1;
        stubs.extend(std::iter::repeat(v).take(k));
    }
    stubs.shuffle(&mut rng);
    // an odd stub count leaves the last stub unmatched
    let edges: Vec<(NodeId, NodeId)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Graph::from_dense_edges_lenient(n, &edges).giant_component()
}
