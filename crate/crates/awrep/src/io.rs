//! JSON and CSV serialization of representations and q-Racah tables.
//!
//! Schema `awrep/1`: complex numbers are `[re, im]` pairs, matrices are
//! row-major arrays of pairs, and every artifact echoes `q12` so outputs are
//! self-describing. Field order is fixed by struct order. CSV tables use a
//! `n\x,0,1,...,N` header with complex cells rendered as `re+imi`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::qkernel::Scalar;
use crate::repbuild::{AlgebraParams, BasisLabel, Rep, RepMeta};
use crate::scalar::{format_scalar, parse_scalar};

pub const SCHEMA: &str = "awrep/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub schema: String,
    pub q12: [f64; 2],
    pub n: usize,
    pub basis: String,
    pub matrices: MatricesJson,
    pub meta: MetaJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatricesJson {
    pub i1: Vec<[f64; 2]>,
    pub i2: Vec<[f64; 2]>,
    pub i3: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetaJson {
    pub qmu: [f64; 2],
    pub a1: [f64; 2],
    pub a2: [f64; 2],
    pub a3: [f64; 2],
    pub casimir: [f64; 2],
    pub spectrum: Vec<[f64; 2]>,
}

fn pair(s: Scalar) -> [f64; 2] {
    [s.re, s.im]
}

fn unpair(p: [f64; 2]) -> Result<Scalar> {
    if !p[0].is_finite() || !p[1].is_finite() {
        return Err(Error::Parse("non-finite scalar in JSON".into()));
    }
    Ok(Scalar::new(p[0], p[1]))
}

fn mat_to_rows(m: &CMat) -> Vec<[f64; 2]> {
    let n = m.nrows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(pair(m[(i, j)]));
        }
    }
    out
}

fn rows_to_mat(rows: &[[f64; 2]], n: usize) -> Result<CMat> {
    if rows.len() != n * n {
        return Err(Error::Parse(format!(
            "matrix payload has {} entries, expected {}",
            rows.len(),
            n * n
        )));
    }
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = unpair(rows[i * n + j])?;
        }
    }
    Ok(m)
}

pub fn rep_to_json_value(rep: &Rep, q12: Scalar) -> RepJson {
    RepJson {
        schema: SCHEMA.to_string(),
        q12: pair(q12),
        n: rep.n,
        basis: rep.basis.as_str().to_string(),
        matrices: MatricesJson {
            i1: mat_to_rows(&rep.i1),
            i2: mat_to_rows(&rep.i2),
            i3: mat_to_rows(&rep.i3),
        },
        meta: MetaJson {
            qmu: pair(rep.meta.qmu),
            a1: pair(rep.meta.params.a1),
            a2: pair(rep.meta.params.a2),
            a3: pair(rep.meta.params.a3),
            casimir: pair(rep.meta.casimir),
            spectrum: rep.meta.spectrum.iter().map(|s| pair(*s)).collect(),
        },
    }
}

pub fn rep_to_json(rep: &Rep, q12: Scalar) -> String {
    serde_json::to_string_pretty(&rep_to_json_value(rep, q12)).expect("serialization")
}

/// Parse and validate a serialized representation. Returns the rep and the
/// echoed `q12`.
pub fn rep_from_json(s: &str) -> Result<(Rep, Scalar)> {
    let v: RepJson = serde_json::from_str(s).map_err(|e| Error::Serde(e.to_string()))?;
    rep_from_json_value(&v)
}

pub fn rep_from_json_value(v: &RepJson) -> Result<(Rep, Scalar)> {
    if v.schema != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {:?}", v.schema)));
    }
    if v.n > 1 << 12 {
        return Err(Error::Parse(format!("dimension {} too large", v.n + 1)));
    }
    let basis = match v.basis.as_str() {
        "V" => BasisLabel::V,
        "X" => BasisLabel::X,
        "Y" => BasisLabel::Y,
        other => return Err(Error::Parse(format!("unknown basis {other:?}"))),
    };
    let dim = v.n + 1;
    if v.meta.spectrum.len() != dim {
        return Err(Error::Parse(format!(
            "spectrum has {} entries, expected {dim}",
            v.meta.spectrum.len()
        )));
    }
    let q12 = unpair(v.q12)?;
    if q12.norm() == 0.0 {
        return Err(Error::Parse("q12 must be nonzero".into()));
    }
    let rep = Rep {
        n: v.n,
        basis,
        i1: rows_to_mat(&v.matrices.i1, dim)?,
        i2: rows_to_mat(&v.matrices.i2, dim)?,
        i3: rows_to_mat(&v.matrices.i3, dim)?,
        meta: RepMeta {
            qmu: unpair(v.meta.qmu)?,
            params: AlgebraParams::new(
                unpair(v.meta.a1)?,
                unpair(v.meta.a2)?,
                unpair(v.meta.a3)?,
            ),
            casimir: unpair(v.meta.casimir)?,
            spectrum: v
                .meta
                .spectrum
                .iter()
                .map(|p| unpair(*p))
                .collect::<Result<_>>()?,
        },
    };
    Ok((rep, q12))
}

/// Render a complex table as CSV with header `n\x,0,1,...` and `re+imi`
/// cells.
pub fn table_to_csv(table: &[Vec<Scalar>]) -> String {
    let cols = table.first().map(|r| r.len()).unwrap_or(0);
    let mut out = String::from("n\\x");
    for x in 0..cols {
        out.push(',');
        out.push_str(&x.to_string());
    }
    out.push('\n');
    for (n, row) in table.iter().enumerate() {
        out.push_str(&n.to_string());
        for cell in row {
            out.push(',');
            out.push_str(&format_scalar(*cell));
        }
        out.push('\n');
    }
    out
}

/// Parse a CSV table produced by [`table_to_csv`]; rows must be rectangular.
pub fn table_from_csv(s: &str) -> Result<Vec<Vec<Scalar>>> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    if !header.starts_with("n\\x") {
        return Err(Error::Parse("missing n\\x header".into()));
    }
    let cols = header.split(',').count().saturating_sub(1);
    let mut table = Vec::new();
    for (idx, line) in lines.enumerate() {
        let mut fields = line.split(',');
        let label = fields.next().unwrap_or_default();
        let row_idx: usize = label
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad row label {label:?}")))?;
        if row_idx != idx {
            return Err(Error::Parse(format!("row label {row_idx} out of order")));
        }
        let row: Vec<Scalar> = fields.map(parse_scalar).collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "row {idx} has {} cells, expected {cols}",
                row.len()
            )));
        }
        table.push(row);
    }
    Ok(table)
}
