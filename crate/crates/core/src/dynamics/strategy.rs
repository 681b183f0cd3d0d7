use std::fmt;
use std::sync::Arc;

use super::configuration::check_cells;
use crate::error::{Error, Result};

/// How a [`Strategy`] continues after its finite prefix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Generator {
    /// Repeats `pattern` forever.
    Periodic(Arc<[usize]>),
    /// Uniform draws over `1..=N` from the counter-based SplitMix64 stream
    /// keyed by `seed`; see [`uniform_term`].
    UniformRandom { seed: u64 },
}

/// An infinite sequence over `1..=N` selecting which cell is updated at each
/// step: a finite prefix followed by a deterministic generator.
///
/// Terms are numbered from 1. `shift` drops the first term in O(1) by
/// advancing an offset, so `term(k)` stays random-access after any number
/// of shifts.
#[derive(Clone, PartialEq, Eq)]
pub struct Strategy {
    n_cells: usize,
    prefix: Arc<[usize]>,
    generator: Generator,
    offset: u64,
}

/// Term `position` (0-based) of the uniform stream keyed by `seed`.
///
/// The stream is SplitMix64 evaluated at counter `position`:
/// `z = seed + (position + 1) * 0x9E3779B97F4A7C15` followed by the
/// SplitMix64 finalizer, then mapped to `1..=n_cells` by the multiply-high
/// reduction `((z as u128 * n_cells) >> 64) + 1`. Everything is wrapping
/// 64-bit integer arithmetic, so outputs are identical on every platform.
pub fn uniform_term(seed: u64, position: u64, n_cells: usize) -> usize {
    let mut z = seed.wrapping_add(position.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (((z as u128) * (n_cells as u128)) >> 64) as usize + 1
}

impl Strategy {
    pub fn new(n_cells: usize, prefix: Vec<usize>, generator: Generator) -> Result<Self> {
        check_cells(n_cells)?;
        let in_range = |k: &usize| (1..=n_cells).contains(k);
        if let Some(bad) = prefix.iter().find(|k| !in_range(k)) {
            return Err(Error::CellOutOfRange {
                index: *bad,
                n_cells,
            });
        }
        if let Generator::Periodic(pattern) = &generator {
            if pattern.is_empty() {
                return Err(Error::InvalidStrategy("periodic pattern is empty".into()));
            }
            if let Some(bad) = pattern.iter().find(|k| !in_range(k)) {
                return Err(Error::CellOutOfRange {
                    index: *bad,
                    n_cells,
                });
            }
        }
        Ok(Self {
            n_cells,
            prefix: prefix.into(),
            generator,
            offset: 0,
        })
    }

    pub fn periodic(n_cells: usize, pattern: Vec<usize>) -> Result<Self> {
        Self::new(n_cells, Vec::new(), Generator::Periodic(pattern.into()))
    }

    pub fn uniform_random(n_cells: usize, seed: u64) -> Result<Self> {
        Self::new(n_cells, Vec::new(), Generator::UniformRandom { seed })
    }

    /// Same generator, with `prefix` emitted first.
    pub fn with_prefix(&self, prefix: Vec<usize>) -> Result<Self> {
        if self.offset > self.prefix.len() as u64 {
            return Err(Error::InvalidStrategy(
                "cannot re-prefix a strategy shifted past its own prefix".into(),
            ));
        }
        let mut full = prefix;
        full.extend_from_slice(&self.prefix[self.offset as usize..]);
        Self::new(self.n_cells, full, self.generator.clone())
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// Number of terms dropped by `shift` so far.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Term `k` (1-based) of the sequence.
    ///
    /// # Panics
    ///
    /// Panics if `k == 0`.
    pub fn term(&self, k: usize) -> usize {
        assert!(k >= 1, "strategy terms are numbered from 1");
        let position = self.offset + (k as u64 - 1);
        let plen = self.prefix.len() as u64;
        if position < plen {
            return self.prefix[position as usize];
        }
        let q = position - plen;
        match &self.generator {
            Generator::Periodic(pattern) => pattern[(q % pattern.len() as u64) as usize],
            Generator::UniformRandom { seed } => uniform_term(*seed, q, self.n_cells),
        }
    }

    /// The first term, `i(S)`.
    pub fn initial(&self) -> usize {
        self.term(1)
    }

    /// Drops the first term, `σ(S)`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, count: u64) -> Self {
        Self {
            offset: self.offset + count,
            ..self.clone()
        }
    }

    /// Terms `1..=count`.
    pub fn take(&self, count: usize) -> Vec<usize> {
        self.terms().take(count).collect()
    }

    /// Infinite iterator over the terms, starting at term 1.
    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        (1..).map(move |k| self.term(k))
    }

    /// Parses the textual strategy grammar:
    ///
    /// ```text
    /// [prefix:<k>,<k>,...;](periodic:<k>,<k>,... | random:<seed>)
    /// ```
    ///
    /// e.g. `periodic:1,2,3`, `random:42`, `prefix:3,1;periodic:2`.
    pub fn parse(spec: &str, n_cells: usize) -> Result<Self> {
        let spec = spec.trim();
        let bad = |msg: &str| Error::InvalidStrategy(format!("{msg} in `{spec}`"));
        let parse_list = |list: &str| -> Result<Vec<usize>> {
            list.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| bad("invalid cell index"))
                })
                .collect()
        };

        let (prefix, body) = match spec.split_once(';') {
            Some((head, body)) => {
                let list = head
                    .trim()
                    .strip_prefix("prefix:")
                    .ok_or_else(|| bad("expected `prefix:` before `;`"))?;
                let prefix = if list.trim().is_empty() {
                    Vec::new()
                } else {
                    parse_list(list)?
                };
                (prefix, body.trim())
            }
            None => (Vec::new(), spec),
        };

        let (kind, arg) = body
            .split_once(':')
            .ok_or_else(|| bad("expected `periodic:` or `random:`"))?;
        let generator = match kind.trim() {
            "periodic" => Generator::Periodic(parse_list(arg)?.into()),
            "random" => Generator::UniformRandom {
                seed: arg.trim().parse().map_err(|_| bad("invalid seed"))?,
            },
            _ => return Err(bad("unknown generator")),
        };
        Self::new(n_cells, prefix, generator)
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy(")?;
        for k in 1..=8 {
            write!(f, "{},", self.term(k))?;
        }
        write!(f, "…)")
    }
}

impl fmt::Display for Strategy {
    /// Renders in the grammar accepted by [`Strategy::parse`] when the
    /// strategy has not been shifted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.offset > 0 {
            let shown: Vec<usize> = self.take(8);
            return write!(f, "shifted({}):{}…", self.offset, join(&shown));
        }
        if !self.prefix.is_empty() {
            write!(f, "prefix:{};", join(&self.prefix))?;
        }
        match &self.generator {
            Generator::Periodic(p) => write!(f, "periodic:{}", join(p)),
            Generator::UniformRandom { seed } => write!(f, "random:{seed}"),
        }
    }
}
