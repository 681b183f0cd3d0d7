//! Devaney-chaos certification of `G_f` through its graph of iterations.
//!
//! `G_f` is chaotic in the sense of Devaney (regular and topologically
//! transitive on the phase space with the metric of [`crate::metric`])
//! exactly when `Γ(f)` is strongly connected. On a metric space, Devaney
//! chaos also implies sensitive dependence on initial conditions (Banks et
//! al.), so sensitivity needs no separate certificate.
//!
//! Besides the yes/no verdict this module builds constructive witnesses of
//! each ingredient at desk scale: [`steer`] for transitivity,
//! [`periodic_point_near`] for regularity and [`estimate_sensitivity`] for
//! an empirical sensitivity constant.

mod graph;
mod scc;

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use graph::{Arc, IterationGraph};

use crate::dynamics::{
    chaotic_iterate, replay, BooleanMap, Configuration, Generator, PhasePoint, Strategy,
};
use crate::error::{Error, Result};

/// Verdict of the strong-connectivity criterion for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaosCertificate {
    pub function: String,
    pub table_hash: String,
    pub n_cells: usize,
    pub strongly_connected: bool,
    pub scc_count: usize,
    /// Strongly connected components, each sorted, ordered by smallest
    /// member. Empty when the graph is strongly connected.
    pub components: Vec<Vec<Configuration>>,
    /// `(u, v)` such that no path leads from `u` to `v`; present iff the
    /// graph is not strongly connected.
    pub witness: Option<(Configuration, Configuration)>,
}

impl ChaosCertificate {
    pub fn is_chaotic(&self) -> bool {
        self.strongly_connected
    }
}

/// Decides strong connectivity of `graph` with Tarjan's algorithm.
pub fn strongly_connected(graph: &IterationGraph) -> ChaosCertificate {
    let n = graph.n_cells();
    let to_cfg = |v: u32| Configuration::from_index(n, v).expect("vertex in range");
    let raw = scc::tarjan(graph);
    let scc_count = raw.len();
    let strongly_connected = scc_count == 1;

    let (components, witness) = if strongly_connected {
        (Vec::new(), None)
    } else {
        // Tarjan completes a sink component first: nothing outside it is
        // reachable from it.
        let sink = &raw[0];
        let u = *sink.iter().min().expect("components are non-empty");
        let v = raw[1..]
            .iter()
            .flat_map(|c| c.iter().copied())
            .min()
            .expect("at least two components");
        let mut comps: Vec<Vec<Configuration>> = raw
            .iter()
            .map(|c| {
                let mut c: Vec<u32> = c.clone();
                c.sort_unstable();
                c.into_iter().map(to_cfg).collect()
            })
            .collect();
        comps.sort_by_key(|c| c[0].index());
        (comps, Some((to_cfg(u), to_cfg(v))))
    };

    ChaosCertificate {
        function: graph.map().label(),
        table_hash: graph.map().table_hash(),
        n_cells: n,
        strongly_connected,
        scc_count,
        components,
        witness,
    }
}

/// Builds `Γ(f)` and certifies it. `true` means `G_f` is chaotic.
pub fn certify_devaney_chaos(f: &BooleanMap) -> ChaosCertificate {
    strongly_connected(&IterationGraph::build(f))
}

/// Shortest label sequence steering `from` to `to` through `Γ(f)`.
///
/// Breadth-first search exploring labels in increasing order, so ties are
/// broken by the smallest label. Replaying the result through
/// [`chaotic_iterate`] lands exactly on `to`. `None` iff `to` is
/// unreachable; `from == to` gives an empty segment.
pub fn steer(
    graph: &IterationGraph,
    from: Configuration,
    to: Configuration,
) -> Result<Option<Vec<usize>>> {
    let n = graph.n_cells();
    from.check_same_dim(n)?;
    to.check_same_dim(n)?;
    if from == to {
        return Ok(Some(Vec::new()));
    }

    const NONE: u32 = u32::MAX;
    let mut parent = vec![NONE; graph.vertex_count()];
    let mut via = vec![0u8; graph.vertex_count()];
    let (start, goal) = (from.index(), to.index());
    parent[start as usize] = start;
    let mut queue = VecDeque::from([start]);

    while let Some(v) = queue.pop_front() {
        for (label, w) in graph.successors(v) {
            if parent[w as usize] != NONE {
                continue;
            }
            parent[w as usize] = v;
            via[w as usize] = label as u8;
            if w == goal {
                let mut path = Vec::new();
                let mut cur = goal;
                while cur != start {
                    path.push(usize::from(via[cur as usize]));
                    cur = parent[cur as usize];
                }
                path.reverse();
                return Ok(Some(path));
            }
            queue.push_back(w);
        }
    }
    Ok(None)
}

/// A periodic point of `G_f` within `10^{-k}` of `point`.
///
/// The returned strategy is periodic with pattern
/// `(S^1, …, S^k) ++ steer(x', E)`, where `x'` is the configuration reached
/// from `E` after the first `k` terms of `S`. It agrees with `S` on `k`
/// terms and `G_f` returns to the same point after one pattern length.
///
/// Fails with [`Error::NotStronglyConnected`] when `Γ(f)` is not strongly
/// connected, since the return path may then not exist.
pub fn periodic_point_near(
    graph: &IterationGraph,
    point: &PhasePoint,
    precision: usize,
) -> Result<PhasePoint> {
    let f = graph.map();
    point.config.check_same_dim(f.n_cells())?;
    if point.strategy.n_cells() != f.n_cells() {
        return Err(Error::DimensionMismatch {
            expected: f.n_cells(),
            found: point.strategy.n_cells(),
        });
    }
    if precision == 0 {
        return Err(Error::InvalidConfig("precision must be at least 1".into()));
    }
    if !strongly_connected(graph).strongly_connected {
        return Err(Error::NotStronglyConnected(f.label()));
    }

    let mut cycle = point.strategy.take(precision);
    let reached = replay(f, point.config, &cycle)?
        .last()
        .copied()
        .unwrap_or(point.config);
    let back = steer(graph, reached, point.config)?
        .expect("strongly connected graphs have a path between any two vertices");
    cycle.extend(back);

    PhasePoint::new(Strategy::periodic(f.n_cells(), cycle)?, point.config)
}

/// Period of a point built by [`periodic_point_near`].
pub fn period_of(point: &PhasePoint) -> Option<usize> {
    match point.strategy.generator() {
        Generator::Periodic(p) if point.strategy.prefix().is_empty() => Some(p.len()),
        _ => None,
    }
}

/// Empirical sensitivity to initial conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SensitivityEstimate {
    pub probes: usize,
    pub horizon: usize,
    /// Whether `Γ(f)` was certified strongly connected. When `false` the
    /// numbers are still reported but carry no chaos claim.
    pub certified: bool,
    /// Largest `d_e` reached over all probes.
    pub max_divergence: u32,
    /// Per probe: first step at which `d_e ≥ 1`, if any.
    pub first_divergence: Vec<Option<usize>>,
    /// Per probe: largest `d_e` observed.
    pub probe_max: Vec<u32>,
    /// Per probe: number of leading strategy terms shared by the pair.
    pub shared_prefix: Vec<usize>,
}

impl SensitivityEstimate {
    pub fn diverged_count(&self) -> usize {
        self.first_divergence.iter().filter(|d| d.is_some()).count()
    }
}

/// Probes pairs of phase points that start on the same configuration with
/// strategies agreeing on their first `m` terms (`m` drawn from
/// `0..=horizon/2`) and differing at term `m + 1`, iterates both for
/// `horizon` steps, and records how far the configurations drift apart.
pub fn estimate_sensitivity(
    f: &BooleanMap,
    probes: usize,
    horizon: usize,
    seed: u64,
) -> Result<SensitivityEstimate> {
    let n = f.n_cells();
    let certified = certify_devaney_chaos(f).strongly_connected;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut estimate = SensitivityEstimate {
        probes,
        horizon,
        certified,
        max_divergence: 0,
        first_divergence: Vec::with_capacity(probes),
        probe_max: Vec::with_capacity(probes),
        shared_prefix: Vec::with_capacity(probes),
    };

    for _ in 0..probes {
        let start = Configuration::from_index(n, rng.gen_range(0..1u32 << n))?;
        let s = Strategy::uniform_random(n, rng.gen())?;
        let shared = rng.gen_range(0..=horizon / 2);
        let mut prefix = s.take(shared);
        let diverging = s.term(shared + 1);
        if n > 1 {
            // uniform over the other n-1 cells
            let pick = rng.gen_range(1..n);
            prefix.push(if pick >= diverging { pick + 1 } else { pick });
        }
        let twin = Strategy::uniform_random(n, rng.gen())?.with_prefix(prefix)?;

        let a = chaotic_iterate(f, start, &s, horizon)?;
        let b = chaotic_iterate(f, start, &twin, horizon)?;
        let mut first = None;
        let mut max = 0;
        for (step, (x, y)) in a.iter().zip(&b).enumerate() {
            let d = x.hamming(y)?;
            if d >= 1 && first.is_none() {
                first = Some(step + 1);
            }
            max = max.max(d);
        }
        estimate.max_divergence = estimate.max_divergence.max(max);
        estimate.first_divergence.push(first);
        estimate.probe_max.push(max);
        estimate.shared_prefix.push(shared);
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::gf_iterate;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_verdicts() {
        for name in ["f0_1", "f0_2", "f1_1"] {
            let c = certify_devaney_chaos(&BooleanMap::builtin(name).unwrap());
            assert!(c.strongly_connected, "{name}");
            assert_eq!(c.scc_count, 1);
            assert!(c.witness.is_none() && c.components.is_empty());
        }
        for name in ["g0", "g1"] {
            let c = certify_devaney_chaos(&BooleanMap::builtin(name).unwrap());
            assert!(!c.strongly_connected, "{name}");
            assert!(c.scc_count > 1);
            assert!(c.witness.is_some());
        }
    }

    #[test]
    fn witness_pair_is_unreachable() {
        for name in ["g0", "g1"] {
            let f = BooleanMap::builtin(name).unwrap();
            let g = IterationGraph::build(&f);
            let c = strongly_connected(&g);
            let (u, v) = c.witness.unwrap();
            assert_eq!(steer(&g, u, v).unwrap(), None, "{name}");
            let total: usize = c.components.iter().map(Vec::len).sum();
            assert_eq!(total, 8);
        }
    }

    #[test]
    fn steer_examples() {
        let f = BooleanMap::builtin("f0_2").unwrap();
        let g = IterationGraph::build(&f);
        assert_eq!(
            steer(&g, cfg("000"), cfg("111")).unwrap(),
            Some(vec![1, 2, 3])
        );
        assert_eq!(steer(&g, cfg("101"), cfg("101")).unwrap(), Some(vec![]));

        let g0 = IterationGraph::build(&BooleanMap::builtin("g0").unwrap());
        assert_eq!(steer(&g0, cfg("000"), cfg("100")).unwrap(), None);
        assert!(steer(&g0, cfg("00"), cfg("100")).is_err());
    }

    #[test]
    fn periodic_point_examples() {
        let f = BooleanMap::builtin("f0_2").unwrap();
        let g = IterationGraph::build(&f);
        let s = Strategy::new(3, vec![1, 2], Generator::UniformRandom { seed: 3 }).unwrap();
        let p = PhasePoint::new(s, cfg("000")).unwrap();
        let q = periodic_point_near(&g, &p, 2).unwrap();
        assert_eq!(q.strategy.take(2), [1, 2]);
        assert_eq!(q.config, p.config);
        let period = period_of(&q).unwrap();
        let back = gf_iterate(&f, &q, period).unwrap();
        assert_eq!(back.config, q.config);
        assert_eq!(back.strategy.take(period), q.strategy.take(period));

        let g1 = IterationGraph::build(&BooleanMap::builtin("g1").unwrap());
        let p = PhasePoint::new(Strategy::periodic(3, vec![1]).unwrap(), cfg("000")).unwrap();
        assert!(matches!(
            periodic_point_near(&g1, &p, 2),
            Err(Error::NotStronglyConnected(_))
        ));
    }

    #[test]
    fn sensitivity_examples() {
        let f = BooleanMap::builtin("f0_2").unwrap();
        let est = estimate_sensitivity(&f, 100, 200, 1).unwrap();
        assert!(est.certified);
        assert_eq!(est.diverged_count(), 100);
        assert!(est.max_divergence >= 1 && est.max_divergence <= 3);

        let g0 = BooleanMap::builtin("g0").unwrap();
        let est = estimate_sensitivity(&g0, 20, 50, 1).unwrap();
        assert!(!est.certified);
        assert_eq!(est.max_divergence, 0);

        let est = estimate_sensitivity(&f, 0, 50, 1).unwrap();
        assert_eq!(est.probes, 0);
        assert!(est.first_divergence.is_empty());
        assert_eq!(est.max_divergence, 0);
    }

    #[test]
    fn sensitivity_is_seeded() {
        let f = BooleanMap::builtin("f1_1").unwrap();
        assert_eq!(
            estimate_sensitivity(&f, 30, 60, 9).unwrap(),
            estimate_sensitivity(&f, 30, 60, 9).unwrap()
        );
    }
}
