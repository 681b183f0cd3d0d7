#![allow(dead_code)]

use std::collections::VecDeque;

use chaosnet::dynamics::{BooleanMap, Configuration};
use rand::Rng;

/// Reachability from `start` over arcs built straight from the definition
/// of the graph of iterations: an arc labelled `i` goes from `x` to `x`
/// with bit `i` flipped iff `f(x)` differs from `x` in bit `i`.
pub fn reachable_from(f: &BooleanMap, start: u32) -> Vec<bool> {
    let n = f.n_cells();
    let mut seen = vec![false; 1 << n];
    seen[start as usize] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let x = Configuration::from_index(n, v).unwrap();
        let fx = f.apply(x).unwrap();
        for i in 1..=n {
            if fx.get(i).unwrap() != x.get(i).unwrap() {
                let w = x.flipped(i).unwrap().index();
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    seen
}

/// Strong connectivity by BFS from every vertex.
pub fn strongly_connected_by_bfs(f: &BooleanMap) -> bool {
    let n = f.n_cells();
    (0..1u32 << n).all(|v| reachable_from(f, v).iter().all(|&r| r))
}

/// A random truth table. Half of the draws perturb the vectorial negation
/// in a few entries so both verdicts show up often.
pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> BooleanMap {
    let size = 1usize << n;
    let mask = (size - 1) as u32;
    let table = if rng.gen_bool(0.5) {
        (0..size).map(|_| rng.gen_range(0..=mask)).collect()
    } else {
        let mut t: Vec<u32> = (0..size as u32).map(|x| x ^ mask).collect();
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(0..size);
            t[i] = rng.gen_range(0..=mask);
        }
        t
    };
    BooleanMap::from_table(n, table).unwrap()
}

/// Central finite-difference gradient.
pub fn central_difference<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let orig = probe[i];
            probe[i] = orig + h;
            let up = f(&probe);
            probe[i] = orig - h;
            let down = f(&probe);
            probe[i] = orig;
            (up - down) / (2.0 * h)
        })
        .collect()
}

pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    diff / na.max(nb).max(1e-300)
}

pub const BUILTINS: [&str; 5] = ["f0_1", "f0_2", "f1_1", "g0", "g1"];
