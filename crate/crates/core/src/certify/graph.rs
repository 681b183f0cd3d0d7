use std::io::{self, Write};

use crate::dynamics::{big_f_unchecked, BooleanMap, Configuration};

/// A labelled arc `from -label-> to` of the graph of iterations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: Configuration,
    pub label: usize,
    pub to: Configuration,
}

/// The graph of iterations `Γ(f)`.
///
/// Vertices are the `2^N` configurations. There is an arc labelled `i`
/// from `x` to `N(i, x)` (`x` with cell `i` switched) exactly when
/// `F_f(i, x) = N(i, x)`, i.e. when updating cell `i` actually changes it.
/// There are no self-loops.
///
/// Arcs are stored as one label bitmask per vertex: bit `i − 1` of
/// `labels[x]` is set iff the arc labelled `i` leaves `x`.
#[derive(Clone, Debug)]
pub struct IterationGraph {
    map: BooleanMap,
    labels: Vec<u32>,
}

impl IterationGraph {
    pub fn build(f: &BooleanMap) -> Self {
        let n = f.n_cells();
        let labels = Configuration::all(n)
            .expect("map has a valid size")
            .map(|x| {
                (1..=n).fold(0u32, |mask, i| {
                    if big_f_unchecked(f, i, x) != x {
                        mask | 1 << (i - 1)
                    } else {
                        mask
                    }
                })
            })
            .collect();
        Self {
            map: f.clone(),
            labels,
        }
    }

    pub fn map(&self) -> &BooleanMap {
        &self.map
    }

    pub fn n_cells(&self) -> usize {
        self.map.n_cells()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.labels.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn out_degree(&self, x: Configuration) -> usize {
        self.labels[x.index() as usize].count_ones() as usize
    }

    pub fn has_arc(&self, x: Configuration, label: usize) -> bool {
        label >= 1
            && label <= self.n_cells()
            && self.labels[x.index() as usize] >> (label - 1) & 1 == 1
    }

    /// Successor indices of vertex `v`, by increasing label.
    pub(crate) fn successors(&self, v: u32) -> impl Iterator<Item = (usize, u32)> + '_ {
        let mask = self.labels[v as usize];
        (0..self.n_cells())
            .filter(move |i| mask >> i & 1 == 1)
            .map(move |i| (i + 1, v ^ (1 << i)))
    }

    /// Arcs ordered by source index, then label.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let n = self.n_cells();
        (0..self.labels.len() as u32).flat_map(move |v| {
            let from = Configuration::from_index(n, v).expect("vertex in range");
            self.successors(v).map(move |(label, w)| Arc {
                from,
                label,
                to: Configuration::from_index(n, w).expect("vertex in range"),
            })
        })
    }

    /// Writes one `x_bits -i-> y_bits` line per arc.
    pub fn write_arcs<W: Write>(&self, mut out: W) -> io::Result<()> {
        for arc in self.arcs() {
            writeln!(out, "{} -{}-> {}", arc.from, arc.label, arc.to)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_no_arcs() {
        let g = IterationGraph::build(&BooleanMap::builtin("g0").unwrap());
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.arc_count(), 0);
    }

    #[test]
    fn negation_is_complete_hypercube() {
        let g = IterationGraph::build(&BooleanMap::builtin("f0_2").unwrap());
        assert_eq!(g.arc_count(), 24);
        for x in Configuration::all(3).unwrap() {
            assert_eq!(g.out_degree(x), 3);
        }
    }

    #[test]
    fn g1_only_label_one() {
        let g = IterationGraph::build(&BooleanMap::builtin("g1").unwrap());
        assert_eq!(g.arc_count(), 8);
        assert!(g.arcs().all(|a| a.label == 1));
    }

    #[test]
    fn arcs_match_definition() {
        let f = BooleanMap::builtin("f1_1").unwrap();
        let g = IterationGraph::build(&f);
        for arc in g.arcs() {
            assert_eq!(arc.to, arc.from.flipped(arc.label).unwrap());
            assert_eq!(
                crate::dynamics::big_f(&f, arc.label, arc.from).unwrap(),
                arc.to
            );
        }
        let mut buf = Vec::new();
        g.write_arcs(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), g.arc_count());
        // f_{1,1}(000) = 100, so from 000 only cell 1 flips
        assert_eq!(text.lines().next().unwrap(), "000 -1-> 100");
    }
}
