//! Text model files.
//!
//! ```text
//! arch N=3 enc=one_hot hidden=8,4
//! W 8 6
//! <row 1 values>
//! ...
//! B 8
//! <values>
//! W 4 8
//! ...
//! ```
//!
//! One `W rows cols` block (row-major, one row per line) and one `B len`
//! block per layer, input side first. Values use Rust's shortest
//! round-trip float formatting, so loading reproduces every parameter
//! bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::mlp::{Encoding, MlpArchitecture, MlpParameters};
use crate::error::{Error, Result};

pub fn write_model(arch: &MlpArchitecture, params: &MlpParameters) -> Result<String> {
    params.check(arch)?;
    let mut out = format!("arch {arch}\n");
    for (layer, &(rows, cols)) in params.shapes().iter().enumerate() {
        let _ = writeln!(out, "W {rows} {cols}");
        for row in params.weights(layer).chunks(cols) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        let _ = writeln!(out, "B {rows}");
        let line: Vec<String> = params
            .biases(layer)
            .iter()
            .map(|v| format!("{v:?}"))
            .collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    Ok(out)
}

pub fn save_model(
    path: impl AsRef<Path>,
    arch: &MlpArchitecture,
    params: &MlpParameters,
) -> Result<()> {
    fs::write(path, write_model(arch, params)?)?;
    Ok(())
}

fn parse_header(line: &str) -> Result<MlpArchitecture> {
    let bad = |m: String| Error::parse(1, m);
    let rest = line
        .strip_prefix("arch ")
        .ok_or_else(|| bad(format!("expected `arch …` header, got `{line}`")))?;
    let (mut n, mut enc, mut hidden) = (None, None, None);
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field `{field}`")))?;
        match key {
            "N" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad N `{value}`")))?,
                )
            }
            "enc" => enc = Some(Encoding::parse(value).map_err(|e| bad(e.to_string()))?),
            "hidden" => {
                hidden = Some(
                    value
                        .split(',')
                        .map(|h| {
                            h.parse::<usize>()
                                .map_err(|_| bad(format!("bad hidden `{value}`")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            other => return Err(bad(format!("unknown header field `{other}`"))),
        }
    }
    let missing = |k: &str| bad(format!("header is missing `{k}`"));
    MlpArchitecture::new(
        n.ok_or_else(|| missing("N"))?,
        enc.ok_or_else(|| missing("enc"))?,
        hidden.ok_or_else(|| missing("hidden"))?,
    )
}

pub fn parse_model(text: &str) -> Result<(MlpArchitecture, MlpParameters)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty model file"))?;
    let arch = parse_header(header.trim())?;

    // tokens after the header, tagged with their line number
    let mut tokens = lines
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 2, t)));
    let mut next = |what: &str| {
        tokens
            .next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
    };

    let mut params = MlpParameters::zeros(&arch);
    for (layer, &(rows, cols)) in arch.layer_shapes().iter().enumerate() {
        for (tag, dims, len) in [
            ("W", vec![rows, cols], rows * cols),
            ("B", vec![rows], rows),
        ] {
            let (line, t) = next(tag)?;
            if t != tag {
                return Err(Error::parse(line, format!("expected `{tag}`, got `{t}`")));
            }
            for &d in &dims {
                let (line, t) = next("dimension")?;
                if t.parse::<usize>().ok() != Some(d) {
                    return Err(Error::parse(
                        line,
                        format!(
                            "layer {layer} {tag} dimension `{t}` does not match architecture ({d})"
                        ),
                    ));
                }
            }
            let target = if tag == "W" {
                params.weights_mut(layer)
            } else {
                params.biases_mut(layer)
            };
            for slot in target.iter_mut().take(len) {
                let (line, t) = next("value")?;
                *slot = t
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid number `{t}`")))?;
            }
        }
    }
    if let Ok((line, t)) = next("") {
        return Err(Error::parse(line, format!("trailing content `{t}`")));
    }
    params.check(&arch)?;
    Ok((arch, params))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<(MlpArchitecture, MlpParameters)> {
    parse_model(&fs::read_to_string(path)?)
}
