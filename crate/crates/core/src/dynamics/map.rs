use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::configuration::{check_cells, Configuration};
use crate::error::{Error, Result};

/// A function `f: B^N -> B^N` stored as an explicit truth table.
///
/// Entry `i` of the table is the image of the configuration whose integer
/// index is `i` (cell 1 in the least significant bit).
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanMap {
    n_cells: usize,
    table: Vec<u32>,
    name: Option<String>,
}

/// Names accepted by [`BooleanMap::builtin`].
pub const BUILTIN_NAMES: &[&str] = &["f0_1", "f0_2", "f1_1", "g0", "g1"];

impl BooleanMap {
    /// Tabulates `rule` over every input configuration.
    pub fn from_fn<F>(n_cells: usize, rule: F) -> Result<Self>
    where
        F: Fn(Configuration) -> Configuration,
    {
        let table = Configuration::all(n_cells)?
            .map(|x| {
                let y = rule(x);
                y.check_same_dim(n_cells).map(|_| y.index())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n_cells,
            table,
            name: None,
        })
    }

    /// Builds a map from raw output indices, one per input index.
    pub fn from_table(n_cells: usize, table: Vec<u32>) -> Result<Self> {
        check_cells(n_cells)?;
        if table.len() != 1 << n_cells {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_cells,
                found: table.len(),
            });
        }
        let limit = 1u32 << n_cells;
        if let Some(&bad) = table.iter().find(|&&y| y >= limit) {
            return Err(Error::DimensionMismatch {
                expected: n_cells,
                found: 32 - bad.leading_zeros() as usize,
            });
        }
        Ok(Self {
            n_cells,
            table,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Vectorial negation `(x_1,…,x_N) -> (!x_1,…,!x_N)`.
    pub fn negation(n_cells: usize) -> Result<Self> {
        check_cells(n_cells)?;
        let mask = ((1u64 << n_cells) - 1) as u32;
        Ok(Self::from_fn(n_cells, |x| {
            Configuration::from_index(n_cells, x.index() ^ mask).expect("in range")
        })?
        .with_name(format!("f0:{n_cells}")))
    }

    /// Shift-negate `(x_1,…,x_N) -> (!x_1, x_1, …, x_{N-1})`.
    pub fn shift_negate(n_cells: usize) -> Result<Self> {
        check_cells(n_cells)?;
        let mask = ((1u64 << n_cells) - 1) as u32;
        Ok(Self::from_fn(n_cells, |x| {
            let shifted = (x.index() << 1) & mask;
            let first = u32::from(!x.bit(0));
            Configuration::from_index(n_cells, shifted | first).expect("in range")
        })?
        .with_name(format!("f1:{n_cells}")))
    }

    /// Identity on `n_cells` cells.
    pub fn identity(n_cells: usize) -> Result<Self> {
        Ok(Self::from_fn(n_cells, |x| x)?.with_name(format!("id:{n_cells}")))
    }

    /// Negates cell 1 only, leaving every other cell unchanged.
    pub fn negate_first(n_cells: usize) -> Result<Self> {
        Ok(
            Self::from_fn(n_cells, |x| x.flipped(1).expect("cell 1 exists"))?
                .with_name(format!("neg1:{n_cells}")),
        )
    }

    /// Resolves a builtin by name.
    ///
    /// Recognised: `f0_1` (negation, N=4), `f0_2` (negation, N=3), `f1_1`
    /// (shift-negate, N=3), `g0` (identity, N=3), `g1` (negate cell 1, N=3),
    /// and the parametric families `f0:<N>` and `f1:<N>`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownFunction(name.to_string());
        let map = match name {
            "f0_1" => Self::negation(4)?,
            "f0_2" => Self::negation(3)?,
            "f1_1" => Self::shift_negate(3)?,
            "g0" => Self::identity(3)?,
            "g1" => Self::negate_first(3)?,
            _ => {
                let (family, n) = name.split_once(':').ok_or_else(unknown)?;
                let n: usize = n.parse().map_err(|_| unknown())?;
                match family {
                    "f0" => Self::negation(n)?,
                    "f1" => Self::shift_negate(n)?,
                    _ => return Err(unknown()),
                }
            }
        };
        Ok(map.with_name(name))
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if set, else a short content hash.
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("table:{}", &self.table_hash()[..12]))
    }

    /// Raw output indices, indexed by input index.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Evaluates `f(x)` by table lookup.
    pub fn apply(&self, x: Configuration) -> Result<Configuration> {
        x.check_same_dim(self.n_cells)?;
        Ok(self.apply_unchecked(x))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, x: Configuration) -> Configuration {
        Configuration::from_index(self.n_cells, self.table[x.index() as usize])
            .expect("table entries are validated on construction")
    }

    /// SHA-256 over `N` and the table, hex encoded.
    pub fn table_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n_cells as u32).to_le_bytes());
        for y in &self.table {
            hasher.update(y.to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }

    /// Parses the truth-table text format:
    ///
    /// ```text
    /// N=3
    /// 000 -> 111
    /// 100 -> 011
    /// ...
    /// ```
    ///
    /// Bits are written cell 1 first and the `2^N` inputs must appear in
    /// increasing index order. Blank lines and lines starting with `#` are
    /// ignored.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let n_cells: usize = header
            .strip_prefix("N=")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| {
                Error::parse(header_line, format!("expected `N=<int>`, got `{header}`"))
            })?;
        check_cells(n_cells).map_err(|e| Error::parse(header_line, e.to_string()))?;

        let mut table = Vec::with_capacity(1 << n_cells);
        for (expected, (line_no, line)) in (0u32..).zip(lines) {
            let (input, output) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(line_no, "expected `<bits> -> <bits>`"))?;
            let parse_bits = |s: &str| {
                let c: Configuration = s
                    .parse()
                    .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
                if c.n_cells() != n_cells {
                    return Err(Error::parse(
                        line_no,
                        format!("expected {n_cells} bits, got {}", c.n_cells()),
                    ));
                }
                Ok(c)
            };
            let input = parse_bits(input)?;
            let output = parse_bits(output)?;
            if input.index() != expected {
                return Err(Error::parse(
                    line_no,
                    format!("inputs must be in increasing index order; expected {}", {
                        Configuration::from_index(n_cells, expected)
                            .map(|c| c.to_string())
                            .unwrap_or_else(|_| "end of table".into())
                    }),
                ));
            }
            table.push(output.index());
        }
        if table.len() != 1 << n_cells {
            return Err(Error::parse(
                text.lines().count(),
                format!("expected {} rows, got {}", 1 << n_cells, table.len()),
            ));
        }
        Self::from_table(n_cells, table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let map = Self::parse_table(&fs::read_to_string(path)?)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "table".into());
        Ok(map.with_name(stem))
    }

    /// Resolves `spec` as a builtin name, falling back to a table file path.
    pub fn resolve(spec: &str) -> Result<Self> {
        match Self::builtin(spec) {
            Ok(map) => Ok(map),
            Err(Error::UnknownFunction(_)) if Path::new(spec).exists() => Self::load(spec),
            Err(e) => Err(e),
        }
    }

    pub fn to_table_string(&self) -> String {
        let mut out = format!("N={}\n", self.n_cells);
        for x in Configuration::all(self.n_cells).expect("validated") {
            let _ = writeln!(out, "{x} -> {}", self.apply_unchecked(x));
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_table_string())?;
        Ok(())
    }
}

impl std::fmt::Debug for BooleanMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BooleanMap")
            .field("name", &self.label())
            .field("n_cells", &self.n_cells)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let f0 = BooleanMap::negation(3).unwrap();
        assert_eq!(f0.apply(cfg("101")).unwrap(), cfg("010"));
        let g0 = BooleanMap::builtin("g0").unwrap();
        assert_eq!(g0.apply(cfg("011")).unwrap(), cfg("011"));
        let f11 = BooleanMap::builtin("f1_1").unwrap();
        assert_eq!(f11.apply(cfg("101")).unwrap(), cfg("010"));
        assert!(matches!(
            f0.apply(cfg("10")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    // Closed forms written out per component, independent of the bit tricks
    // used by the constructors.
    #[test]
    fn builtins_match_closed_forms() {
        type Rule = fn(&[bool]) -> Vec<bool>;
        let cases: [(&str, usize, Rule); 5] = [
            ("f0_1", 4, |x| x.iter().map(|b| !b).collect()),
            ("f0_2", 3, |x| x.iter().map(|b| !b).collect()),
            ("f1_1", 3, |x| vec![!x[0], x[0], x[1]]),
            ("g0", 3, |x| x.to_vec()),
            ("g1", 3, |x| vec![!x[0], x[1], x[2]]),
        ];
        for (name, n, rule) in cases {
            let f = BooleanMap::builtin(name).unwrap();
            assert_eq!(f.n_cells(), n, "{name}");
            for x in Configuration::all(n).unwrap() {
                let expected = Configuration::from_bits(&rule(&x.bits())).unwrap();
                assert_eq!(f.apply(x).unwrap(), expected, "{name} at {x}");
            }
        }
        let f1 = BooleanMap::builtin("f1:5").unwrap();
        for x in Configuration::all(5).unwrap() {
            let b = x.bits();
            let expected = Configuration::from_bits(&[!b[0], b[0], b[1], b[2], b[3]]).unwrap();
            assert_eq!(f1.apply(x).unwrap(), expected);
        }
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(
            BooleanMap::builtin("f7"),
            Err(Error::UnknownFunction(_))
        ));
        assert!(BooleanMap::builtin("f0:0").is_err());
        assert!(BooleanMap::builtin("f0:21").is_err());
    }

    #[test]
    fn table_text_round_trip() {
        let f = BooleanMap::builtin("f1_1").unwrap();
        let text = f.to_table_string();
        assert!(text.starts_with("N=3\n000 -> 100\n100 -> 010\n"));
        let back = BooleanMap::parse_table(&text).unwrap();
        assert_eq!(back.table(), f.table());
    }

    #[test]
    fn table_parse_errors() {
        assert!(BooleanMap::parse_table("").is_err());
        assert!(BooleanMap::parse_table("M=1\n0 -> 1\n1 -> 0\n").is_err());
        // out of order
        assert!(BooleanMap::parse_table("N=1\n1 -> 1\n0 -> 0\n").is_err());
        // too short
        assert!(BooleanMap::parse_table("N=2\n00 -> 11\n").is_err());
        // wrong width
        assert!(BooleanMap::parse_table("N=1\n0 -> 10\n1 -> 0\n").is_err());
        // too long
        assert!(BooleanMap::parse_table("N=1\n0 -> 1\n1 -> 0\n0 -> 0\n").is_err());
        let ok = BooleanMap::parse_table("# comment\nN=1\n\n0 -> 1\n1 -> 0\n").unwrap();
        assert_eq!(ok.table(), &[1, 0]);
    }

    #[test]
    fn hash_depends_on_content() {
        let a = BooleanMap::builtin("f0_2").unwrap();
        let b = BooleanMap::builtin("g1").unwrap();
        assert_ne!(a.table_hash(), b.table_hash());
        assert_eq!(
            a.table_hash(),
            BooleanMap::negation(3).unwrap().table_hash()
        );
        assert_eq!(a.table_hash().len(), 64);
    }
}
