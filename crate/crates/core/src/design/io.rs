use std::fmt::Write as _;
use std::sync::Arc;

use super::SubspaceDesign;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::vector::FqSpace;

pub const DESIGN_MAGIC: &str = "qcover-design v1";

const LABEL_PREFIX: &str = "# label:";

/// Canonical text form: header, optional label comment, then one block per
/// line as its RREF rows. A 0-dimensional block is written as `-`.
pub fn write_design(d: &SubspaceDesign) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{DESIGN_MAGIC}");
    let _ = writeln!(out, "q={} n={} k={}", d.q(), d.n(), d.k());
    if let Some(label) = d.label() {
        let _ = writeln!(out, "{LABEL_PREFIX} {label}");
    }
    for b in d.blocks() {
        if b.dim() == 0 {
            out.push_str("-\n");
            continue;
        }
        let rows: Vec<String> = b.rows().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "{}", rows.join(" "));
    }
    out
}

/// Parses a design over the default field of the declared order.
pub fn parse_design(text: &str) -> Result<SubspaceDesign> {
    parse_with(text, |q| Field::with_order(q).map(Arc::new))
}

/// Parses a design over the given field; the declared q must match its order.
pub fn parse_design_in(text: &str, field: Arc<Field>) -> Result<SubspaceDesign> {
    parse_with(text, |q| {
        if q == field.order() {
            Ok(field.clone())
        } else {
            Err(Error::Mismatch(format!(
                "file declares q={q}, field has order {}",
                field.order()
            )))
        }
    })
}

fn parse_with(
    text: &str,
    field_for: impl FnOnce(u32) -> Result<Arc<Field>>,
) -> Result<SubspaceDesign> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut label = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if l.starts_with('#') {
            if label.is_none() {
                if let Some(rest) = l.strip_prefix(LABEL_PREFIX) {
                    label = Some(rest.trim().to_string());
                }
            }
            continue;
        }
        lines.push((i + 1, l));
    }
    let mut it = lines.into_iter();
    match it.next() {
        Some((_, l)) if l == DESIGN_MAGIC => {}
        Some((i, _)) => return Err(perr(i, format!("expected `{DESIGN_MAGIC}`"))),
        None => return Err(perr(0, "empty input".into())),
    }
    let (hline, header) = it
        .next()
        .ok_or_else(|| perr(0, "missing header line".into()))?;
    let (mut q, mut n, mut k) = (None, None, None);
    for tok in header.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| perr(hline, format!("bad header field `{tok}`")))?;
        let val: u32 = val
            .parse()
            .map_err(|_| perr(hline, format!("bad number in `{tok}`")))?;
        match key {
            "q" => q = Some(val),
            "n" => n = Some(val as usize),
            "k" => k = Some(val as usize),
            _ => return Err(perr(hline, format!("unknown header field `{key}`"))),
        }
    }
    let (Some(q), Some(n), Some(k)) = (q, n, k) else {
        return Err(perr(hline, "header needs q=, n= and k=".into()));
    };
    let field = field_for(q).map_err(|e| perr(hline, e.to_string()))?;
    let space = FqSpace::new(field, n).map_err(|e| perr(hline, e.to_string()))?;
    if k > n {
        return Err(perr(hline, format!("k={k} exceeds n={n}")));
    }

    let mut blocks = Vec::new();
    for (i, l) in it {
        let block = if l == "-" {
            space.zero_subspace()
        } else {
            let mut vs = Vec::new();
            for tok in l.split_whitespace() {
                if tok.chars().count() != n {
                    return Err(perr(i, format!("vector `{tok}` does not have {n} digits")));
                }
                vs.push(
                    space
                        .parse_vector(tok)
                        .map_err(|e| perr(i, e.to_string()))?,
                );
            }
            space.span(&vs).map_err(|e| perr(i, e.to_string()))?
        };
        if block.dim() != k {
            return Err(perr(
                i,
                format!("block spans dimension {}, expected {k}", block.dim()),
            ));
        }
        blocks.push(block);
    }
    let d = SubspaceDesign::new_dedup(space, k, blocks)?;
    Ok(match label {
        Some(l) => d.with_label(l),
        None => d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let text = "qcover-design v1\nq=3 n=3 k=2\n# label: demo\n# note\n\n120 011\n  011 101  \n100 010\n";
        let d = parse_design(text).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.label(), Some("demo"));
        let out = write_design(&d);
        assert_eq!(
            out,
            "qcover-design v1\nq=3 n=3 k=2\n# label: demo\n100 010\n101 011\n"
        );
        assert_eq!(write_design(&parse_design(&out).unwrap()), out);
    }

    #[test]
    fn zero_dimensional_blocks() {
        let s = FqSpace::with_order(2, 3).unwrap();
        let d = SubspaceDesign::new(s.clone(), 0, [s.zero_subspace()]).unwrap();
        let out = write_design(&d);
        assert_eq!(out, "qcover-design v1\nq=2 n=3 k=0\n-\n");
        assert_eq!(parse_design(&out).unwrap(), d);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            "",
            "qcover-design v2\nq=2 n=3 k=1\n",
            "qcover-design v1\nq=6 n=3 k=1\n",
            "qcover-design v1\nq=2 n=3\n",
            "qcover-design v1\nq=2 n=3 k=1\n1000\n",
            "qcover-design v1\nq=2 n=3 k=1\n120\n",
            "qcover-design v1\nq=2 n=3 k=2\n100 100\n",
            "qcover-design v1\nq=2 n=3 k=4\n",
        ];
        for text in bad {
            assert!(
                matches!(parse_design(text), Err(Error::Parse { .. })),
                "{text:?}"
            );
        }
    }

    #[test]
    fn custom_field() {
        let f = Arc::new(Field::new(2, 2, None).unwrap());
        let text = "qcover-design v1\nq=4 n=2 k=1\n13\n";
        let d = parse_design_in(text, f.clone()).unwrap();
        assert_eq!(write_design(&d), "qcover-design v1\nq=4 n=2 k=1\n13\n");
        assert!(parse_design_in("qcover-design v1\nq=2 n=2 k=1\n10\n", f).is_err());
    }
}
