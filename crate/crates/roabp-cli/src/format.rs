//! On-disk program format: JSON with a header and nested coefficient lists.
//!
//! ```json
//! {
//!   "modulus": 2147483647,
//!   "n": 2, "d": 1, "w": 1,
//!   "order": [1, 2],
//!   "shape": "scalar",
//!   "layers": [ [ [ [0, 1] ] ], [ [ [0, 1] ] ] ]
//! }
//! ```
//!
//! `order` lists 1-based variable indices; `layers[i][row][col]` is the
//! coefficient list (constant first) of the entry polynomial in the layer's
//! variable. Serialization is canonical: parsing then re-serializing a file
//! produced here is byte-identical.

use anyhow::{bail, Context};
use roabp::algebra::poly::{UniPoly, Var};
use roabp::{Field, Fp, Matrix, Roabp};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RoabpFile {
    pub modulus: u64,
    pub n: usize,
    pub d: u32,
    pub w: usize,
    pub order: Vec<usize>,
    pub shape: String,
    pub layers: Vec<Vec<Vec<Vec<u64>>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ShiftFile {
    pub modulus: u64,
    /// One coefficient list (constant first, in `t`) per variable.
    pub entries: Vec<Vec<u64>>,
}

pub fn shape_string(r: &Roabp<Fp>) -> &'static str {
    match r.output_dims() {
        (1, 1) => "scalar",
        (1, _) => "row",
        _ => "matrix",
    }
}

pub fn to_file(r: &Roabp<Fp>) -> RoabpFile {
    let layers = r
        .layers()
        .iter()
        .map(|layer| {
            (0..layer.rows())
                .map(|i| {
                    (0..layer.cols())
                        .map(|j| {
                            layer[(i, j)]
                                .coeffs()
                                .iter()
                                .map(|c| c.value())
                                .collect::<Vec<u64>>()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    RoabpFile {
        modulus: r.field().modulus(),
        n: r.n(),
        d: r.degree_bound(),
        w: r.width(),
        order: r.order().iter().map(|&v| v + 1).collect(),
        shape: shape_string(r).to_string(),
        layers,
    }
}

pub fn from_file(file: &RoabpFile) -> anyhow::Result<Roabp<Fp>> {
    let field = Field::new(file.modulus)
        .with_context(|| format!("modulus {} rejected", file.modulus))?;
    if file.order.len() != file.n {
        bail!("order has {} entries, expected n={}", file.order.len(), file.n);
    }
    let order: Vec<usize> = file
        .order
        .iter()
        .map(|&v| {
            if v == 0 || v > file.n {
                bail!("variable index {v} out of range 1..={}", file.n)
            } else {
                Ok(v - 1)
            }
        })
        .collect::<anyhow::Result<_>>()?;
    if file.layers.len() != file.n {
        bail!("{} layers for n={} variables", file.layers.len(), file.n);
    }
    let mut layers = Vec::with_capacity(file.n);
    for (i, rows) in file.layers.iter().enumerate() {
        let var = Var::X(order[i] as u32);
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            bail!("layer {} is empty", i + 1);
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                bail!("layer {} has ragged rows", i + 1);
            }
            for coeffs in row {
                if coeffs.len() > file.d as usize + 1 {
                    bail!(
                        "layer {} entry has {} coefficients, degree bound is {}",
                        i + 1,
                        coeffs.len(),
                        file.d
                    );
                }
                entries.push(UniPoly::from_values(var, field, coeffs));
            }
        }
        layers.push(Matrix::new(UniPoly::zero(var, field.zero()), r, c, entries));
    }
    let r = Roabp::new(file.d, order, layers).context("invalid program structure")?;
    let actual_shape = shape_string(&r);
    if file.shape != actual_shape {
        bail!("declared shape {:?} but layers form {actual_shape}", file.shape);
    }
    if r.width() > file.w {
        bail!("declared width {} but layers reach {}", file.w, r.width());
    }
    Ok(r)
}

/// Canonical serialization used for golden files and round-trip checks.
pub fn serialize(file: &RoabpFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> anyhow::Result<RoabpFile> {
    serde_json::from_str(text).context("invalid program file")
}

pub fn parse_shift(text: &str, expect_modulus: u64, n: usize) -> anyhow::Result<Vec<UniPoly<Fp>>> {
    let file: ShiftFile = serde_json::from_str(text).context("invalid shift file")?;
    if file.modulus != expect_modulus {
        bail!(
            "shift file modulus {} does not match {}",
            file.modulus,
            expect_modulus
        );
    }
    if file.entries.len() != n {
        bail!("shift file has {} entries, expected {}", file.entries.len(), n);
    }
    let field = Field::new(file.modulus)?;
    Ok(file
        .entries
        .iter()
        .map(|coeffs| UniPoly::from_values(Var::T, field, coeffs))
        .collect())
}
