//! File formats. Rationals are strings `"p/q"` (or `"p"`), indices are
//! 1-based to match the table conventions, omitted products and tensors are
//! zero. Loaders fail loudly on malformed input: asymmetric metrics,
//! degenerate metrics (with the kernel as witness), shape errors and broken
//! skew-symmetry are all rejected.

use crate::algebra::Algebra;
use crate::bilinear::{Metric, MetricAlgebra};
use crate::construct::{t3_zeros, ExtDataAny, ExtDataL, ExtDataR, ExtDataSym, Tensor3};
use crate::error::{Error, Result};
use crate::exactlin::{is_vzero, rat_from_string, rat_to_string, vadd, RMatrix, Rat};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ProductJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MetricJson {
    pub matrix: Vec<Vec<String>>,
}

/// `{"algebra": ..., "metric": ...}`; `check` also accepts a bare algebra.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BundleJson {
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricJson>,
}

pub fn algebra_to_json(alg: &Algebra) -> AlgebraJson {
    let mut products = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let v = alg.basis_product(i, j);
            if is_vzero(v) {
                continue;
            }
            let mut coeffs = BTreeMap::new();
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    coeffs.insert((k + 1).to_string(), rat_to_string(c));
                }
            }
            products.push(ProductJson {
                i: i + 1,
                j: j + 1,
                coeffs,
            });
        }
    }
    AlgebraJson {
        dim: alg.dim(),
        basis: Some(alg.basis_names().to_vec()),
        products,
    }
}

pub fn algebra_from_json(js: &AlgebraJson) -> Result<Algebra> {
    let n = js.dim;
    let names = match &js.basis {
        Some(names) => {
            if names.len() != n {
                return Err(Error::Parse(format!(
                    "basis has {} names for dimension {n}",
                    names.len()
                )));
            }
            names.clone()
        }
        None => crate::algebra::default_names(n),
    };
    let mut sc = vec![vec![vec![Rat::zero(); n]; n]; n];
    for prod in &js.products {
        if prod.i == 0 || prod.i > n || prod.j == 0 || prod.j > n {
            return Err(Error::Parse(format!(
                "product index ({}, {}) out of range 1..{n}",
                prod.i, prod.j
            )));
        }
        for (k, v) in &prod.coeffs {
            let k: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient index {k:?}")))?;
            if k == 0 || k > n {
                return Err(Error::Parse(format!(
                    "coefficient index {k} out of range 1..{n}"
                )));
            }
            let c = rat_from_string(v).map_err(Error::Parse)?;
            sc[prod.i - 1][prod.j - 1][k - 1] = &sc[prod.i - 1][prod.j - 1][k - 1] + &c;
        }
    }
    Algebra::new(n, names, sc)
}

pub fn metric_to_json(m: &Metric) -> MetricJson {
    MetricJson {
        matrix: matrix_to_strings(m.matrix()),
    }
}

pub fn matrix_to_strings(m: &RMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| rat_to_string(&m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<RMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse("ragged matrix".to_string()));
    }
    let mut m = RMatrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = rat_from_string(v).map_err(Error::Parse)?;
        }
    }
    Ok(m)
}

/// Rejects asymmetric or degenerate input; the degenerate error carries the
/// kernel as a witness.
pub fn metric_from_json(js: &MetricJson) -> Result<Metric> {
    Metric::new(matrix_from_strings(&js.matrix)?)
}

fn vector_from_strings(v: &[String]) -> Result<Vec<Rat>> {
    v.iter()
        .map(|s| rat_from_string(s).map_err(Error::Parse))
        .collect()
}

pub fn vector_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn tensor3_from_json(t: &[Vec<Vec<String>>], d1: usize, d2: usize, d3: usize) -> Result<Tensor3> {
    if t.len() != d1
        || t.iter()
            .any(|m| m.len() != d2 || m.iter().any(|v| v.len() != d3))
    {
        return Err(Error::Parse(format!(
            "tensor has wrong shape, expected {d1}x{d2}x{d3}"
        )));
    }
    let mut out = t3_zeros(d1, d2, d3);
    for (i, m) in t.iter().enumerate() {
        for (j, v) in m.iter().enumerate() {
            out[i][j] = vector_from_strings(v)?;
        }
    }
    Ok(out)
}

pub fn tensor3_to_json(t: &Tensor3) -> Vec<Vec<Vec<String>>> {
    t.iter()
        .map(|m| m.iter().map(|v| vector_to_strings(v)).collect())
        .collect()
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MetricAlgebraJson {
    pub algebra: AlgebraJson,
    pub metric: MetricJson,
}

pub fn metric_algebra_from_json(js: &MetricAlgebraJson) -> Result<MetricAlgebra> {
    MetricAlgebra::new(
        algebra_from_json(&js.algebra)?,
        metric_from_json(&js.metric)?,
    )
}

pub fn metric_algebra_to_json(ma: &MetricAlgebra) -> MetricAlgebraJson {
    MetricAlgebraJson {
        algebra: algebra_to_json(&ma.algebra),
        metric: metric_to_json(&ma.metric),
    }
}

/// Extension data file: `h`, `A` with its metric, operator families and
/// tensors; absent tensors mean zero.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ExtDataJson {
    pub kind: String,
    pub h: AlgebraJson,
    #[serde(rename = "A")]
    pub a: MetricAlgebraJson,
    #[serde(default, rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, rename = "Omega", skip_serializing_if = "Option::is_none")]
    pub big_omega: Option<Vec<Vec<Vec<String>>>>,
}

fn op_family_from_json(
    t: &Option<Vec<Vec<Vec<String>>>>,
    k: usize,
    n: usize,
) -> Result<Vec<RMatrix>> {
    match t {
        None => Ok(vec![RMatrix::zeros(n, n); k]),
        Some(t) => {
            if t.len() != k {
                return Err(Error::Parse(format!(
                    "operator family has {} members, expected {k}",
                    t.len()
                )));
            }
            let mut out = Vec::with_capacity(k);
            for m in t {
                let m = matrix_from_strings(m)?;
                if m.rows() != n || m.cols() != n {
                    return Err(Error::Parse(format!(
                        "operator must be {n}x{n}, got {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                out.push(m);
            }
            Ok(out)
        }
    }
}

fn opt_tensor3(
    t: &Option<Vec<Vec<Vec<String>>>>,
    d1: usize,
    d2: usize,
    d3: usize,
) -> Result<Tensor3> {
    match t {
        None => Ok(t3_zeros(d1, d2, d3)),
        Some(t) => tensor3_from_json(t, d1, d2, d3),
    }
}

fn require_skew01(t: &Tensor3, what: &str) -> Result<()> {
    for (i, row) in t.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if !is_vzero(&vadd(cell, &t[j][i])) {
                return Err(Error::Parse(format!(
                    "{what} must be skew-symmetric in its two h slots (fails at ({}, {}))",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn require_skew12(t: &Tensor3, what: &str) -> Result<()> {
    for (i, row) in t.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for (l, v) in cell.iter().enumerate() {
                if !(v + &t[i][l][j]).is_zero() {
                    return Err(Error::Parse(format!(
                        "{what} must be skew in its last two slots (fails at ({}, {}, {}))",
                        i + 1,
                        j + 1,
                        l + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Loads extension data with full shape checking: skew tensors are checked
/// at load, not assumed.
pub fn ext_data_from_json(js: &ExtDataJson) -> Result<ExtDataAny> {
    let h = algebra_from_json(&js.h)?;
    let a = metric_algebra_from_json(&js.a)?;
    let k = h.dim();
    let n = a.dim();
    let f = op_family_from_json(&js.f, k, n)?;
    let theta = opt_tensor3(&js.theta, k, k, n)?;
    let omega = opt_tensor3(&js.omega, k, k, n)?;
    let big_omega = opt_tensor3(&js.big_omega, k, k, k)?;
    require_skew01(&omega, "omega")?;
    require_skew12(&big_omega, "Omega")?;
    match js.kind.as_str() {
        "L" => {
            let g = op_family_from_json(&js.g, k, n)?;
            Ok(ExtDataAny::L(ExtDataL::new(
                h, a, f, g, theta, omega, big_omega,
            )?))
        }
        "R" => {
            require_skew01(&theta, "theta")?;
            Ok(ExtDataAny::R(ExtDataR::new(
                h, a, f, theta, omega, big_omega,
            )?))
        }
        "SYM" => {
            require_skew01(&theta, "theta")?;
            Ok(ExtDataAny::Sym(ExtDataSym::new(
                h, a, f, theta, omega, big_omega,
            )?))
        }
        other => Err(Error::Parse(format!(
            "unknown extension kind {other:?}, expected L, R or SYM"
        ))),
    }
}

pub fn ext_data_to_json(data: &ExtDataAny) -> ExtDataJson {
    let (kind, f, g, theta, omega, big_omega) = match data {
        ExtDataAny::L(d) => ("L", &d.f, Some(&d.g), &d.theta, &d.omega, &d.big_omega),
        ExtDataAny::R(d) => ("R", &d.f, None, &d.theta, &d.omega, &d.big_omega),
        ExtDataAny::Sym(d) => ("SYM", &d.f, None, &d.theta, &d.omega, &d.big_omega),
    };
    let fam = |ops: &[RMatrix]| ops.iter().map(matrix_to_strings).collect();
    ExtDataJson {
        kind: kind.to_string(),
        h: algebra_to_json(data.h()),
        a: metric_algebra_to_json(data.a()),
        f: Some(fam(f)),
        g: g.map(|g| fam(g)),
        theta: Some(tensor3_to_json(theta)),
        omega: Some(tensor3_to_json(omega)),
        big_omega: Some(tensor3_to_json(big_omega)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::exem1;

    #[test]
    fn algebra_json_roundtrip() {
        let alg = exem1();
        let js = algebra_to_json(&alg);
        let back = algebra_from_json(&js).unwrap();
        assert_eq!(back.sc(), alg.sc());
        let s = serde_json::to_string(&js).unwrap();
        let js2: AlgebraJson = serde_json::from_str(&s).unwrap();
        assert_eq!(algebra_from_json(&js2).unwrap().sc(), alg.sc());
    }

    #[test]
    fn metric_loader_rejects_bad_input() {
        let asym = MetricJson {
            matrix: vec![vec!["0".into(), "1".into()], vec!["2".into(), "0".into()]],
        };
        assert!(matches!(metric_from_json(&asym), Err(Error::NotSymmetric)));
        let degenerate = MetricJson {
            matrix: vec![vec!["1".into(), "0".into()], vec!["0".into(), "0".into()]],
        };
        match metric_from_json(&degenerate) {
            Err(Error::Degenerate { kernel_basis, .. }) => {
                assert_eq!(kernel_basis.len(), 1);
            }
            other => panic!("expected degenerate error, got {other:?}"),
        }
    }

    #[test]
    fn product_index_out_of_range() {
        let js = AlgebraJson {
            dim: 2,
            basis: None,
            products: vec![ProductJson {
                i: 3,
                j: 1,
                coeffs: BTreeMap::new(),
            }],
        };
        assert!(algebra_from_json(&js).is_err());
    }

    #[test]
    fn ext_loader_rejects_non_skew_omega() {
        let js = ExtDataJson {
            kind: "L".into(),
            h: algebra_to_json(&Algebra::abelian(1)),
            a: MetricAlgebraJson {
                algebra: algebra_to_json(&Algebra::abelian(1)),
                metric: MetricJson {
                    matrix: vec![vec!["1".into()]],
                },
            },
            f: None,
            g: None,
            theta: None,
            omega: Some(vec![vec![vec!["1".into()]]]),
            big_omega: None,
        };
        assert!(ext_data_from_json(&js).is_err());
    }
}
