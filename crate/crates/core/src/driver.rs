//! End-to-end runs: the largest-modulus roots of `G_{n,n}^{1,6}` and the
//! certificates for the substituted graphs `G^{(k,n)}`.

use std::thread;

use serde_json::{json, Value};

use crate::bigfloat::BigComplex;
use crate::closed_forms::{rel_complete_minus, rel_family, FamilyParams};
use crate::error::{Error, Result};
use crate::roots::{find_roots, format_root, max_modulus_root};
use crate::stability::certificate::{box_k7, box_k9, root_box};
use crate::stability::{build_fn, param_box_from_root, schur_cohn_box, ParamBox, SchurCohnReport};
use crate::substitution::{construct_gkn, gkn_size};

/// Reference largest-modulus roots of `G_{n,n}^{1,6}`: `(n, re, im, modulus)`.
pub const REFERENCE_ROOTS: [(usize, f64, f64, f64); 10] = [
    (3, 0.6965978094, 0.7739344775, 1.0412603341),
    (4, 0.7225077023, 0.7873461471, 1.0686118731),
    (5, 0.7415248258, 0.7932060873, 1.0858337645),
    (6, 0.7557913447, 0.7946437701, 1.0966673507),
    (7, 0.7665525647, 0.7937722633, 1.1034841369),
    (8, 0.7747703944, 0.7917743649, 1.1077796753),
    (9, 0.7811493576, 0.7892664429, 1.1104664951),
    (10, 0.7861847934, 0.7865650322, 1.1121020993),
    (11, 0.7902223368, 0.7838329136, 1.1130343112),
    (12, 0.7935054014, 0.7811532818, 1.1134860896),
];

/// Reference sizes of the substituted graphs: `(n, edge connectivity, k, vertices, edges)`.
pub const SUBSTITUTED_GRAPHS: [(usize, u64, u64, u64, u64); 4] = [
    (3, 2, 9, 546, 1080),
    (4, 3, 7, 846, 2100),
    (5, 4, 6, 1086, 3240),
    (6, 5, 6, 1446, 5040),
];

#[derive(Debug, Clone)]
pub struct RootRow {
    pub n: usize,
    pub root: BigComplex,
    /// H-polynomial degree after removing the factor `(1-q)^{2n-1}`.
    pub degree: usize,
    pub precision_bits: u32,
}

impl RootRow {
    pub fn formatted(&self, digits: usize) -> [String; 3] {
        format_root(&self.root, digits, self.precision_bits)
    }
}

/// Largest-modulus root of `Rel(G_{n,n}^{1,6})`.
pub fn largest_root_row(n: usize, precision_bits: u32) -> Result<RootRow> {
    if !(3..=12).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "table rows run over 3..=12, got {n}"
        )));
    }
    let rel = rel_family(&FamilyParams::new(n, n, 1, 6)?)?;
    let h = rel.deflate_one_minus_q(2 * n - 1)?;
    let rs = find_roots(&h, precision_bits)?;
    Ok(RootRow {
        n,
        root: max_modulus_root(&rs)?,
        degree: h.degree().unwrap_or(0),
        precision_bits: rs.precision_bits,
    })
}

/// Rows `3..=max_n`, one thread per row.
pub fn table1(max_n: usize, precision_bits: u32) -> Result<Vec<RootRow>> {
    if !(3..=12).contains(&max_n) {
        return Err(Error::InvalidArgument(format!(
            "max n must be in 3..=12, got {max_n}"
        )));
    }
    thread::scope(|s| {
        let handles: Vec<_> = (3..=max_n)
            .map(|n| s.spawn(move || largest_root_row(n, precision_bits)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table row worker panicked"))
            .collect()
    })
}

pub fn table1_csv(rows: &[RootRow], digits: usize) -> String {
    let mut out = String::from("n,re,im,modulus\n");
    for r in rows {
        let [re, im, m] = r.formatted(digits);
        out.push_str(&format!("{},{re},{im},{m}\n", r.n));
    }
    out
}

/// Largest root modulus of `Rel(K_n^-)` once the trivial roots at `q = 1`
/// are removed.
pub fn gadget_max_modulus(n: usize, precision_bits: u32) -> Result<f64> {
    let (_, h) = rel_complete_minus(n)?.split_one_minus_q();
    if h.degree().unwrap_or(0) == 0 {
        return Ok(0.0);
    }
    let rs = find_roots(&h, precision_bits)?;
    Ok(max_modulus_root(&rs)?.abs(64).to_f64())
}

/// Box used for `(k, n)`: fixed reference boxes for `(9, 3)` and
/// `(7, 4)`, otherwise the image of the root box under `z -> z/(1-z)`
/// after taking principal `k`-th roots.
pub fn default_box(k: u64, n: usize) -> Result<ParamBox> {
    match (k, n) {
        (9, 3) => Ok(box_k9()),
        (7, 4) => Ok(box_k7()),
        _ => {
            let [re_lo, re_hi, im_lo, im_hi] = root_box();
            let k = u32::try_from(k).map_err(|_| Error::InvalidArgument("k too large".into()))?;
            param_box_from_root(&re_lo, &re_hi, &im_lo, &im_hi, k)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub k: u64,
    pub n: usize,
    pub vertices: u64,
    pub edges: u64,
    pub simple: Option<bool>,
    pub report: SchurCohnReport,
    pub gadget_max_modulus: f64,
}

impl Certificate {
    pub fn gadget_inside(&self) -> bool {
        self.gadget_max_modulus < 1.0
    }

    /// A root outside the unit disk is certified when the sign pattern is
    /// uniform over the box, it has a sign change, and none of the roots
    /// of the gadget itself lie outside.
    pub fn pass(&self) -> bool {
        self.report.beta.is_some_and(|b| b >= 1)
            && self.gadget_inside()
            && self.simple != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "n": self.n,
            "graph": {"vertices": self.vertices, "edges": self.edges, "simple": self.simple},
            "schur_cohn": self.report.to_json(),
            "gadget_max_modulus": self.gadget_max_modulus,
            "gadget_roots_inside_unit_disk": self.gadget_inside(),
            "pass": self.pass(),
        })
    }
}

/// Certificate for `G^{(k,n)}` over an explicit box.
///
/// `build_graph` materialises the substituted graph to confirm its size and
/// simplicity; otherwise the sizes are computed.
pub fn certify_with_box(
    k: u64,
    n: usize,
    param_box: ParamBox,
    max_depth: u32,
    precision_bits: u32,
    build_graph: bool,
) -> Result<Certificate> {
    let f = build_fn(n)?;
    let report = schur_cohn_box(&f.on_box(param_box), max_depth)?;
    let (vertices, edges, simple) = if build_graph {
        let g = construct_gkn(k, n)?;
        (g.n() as u64, g.m(), Some(g.is_simple()))
    } else {
        let (v, e) = gkn_size(k, n);
        (v, e, None)
    };
    Ok(Certificate {
        k,
        n,
        vertices,
        edges,
        simple,
        report,
        gadget_max_modulus: gadget_max_modulus(n, precision_bits)?,
    })
}

pub fn certify(k: u64, n: usize, max_depth: u32, precision_bits: u32) -> Result<Certificate> {
    certify_with_box(k, n, default_box(k, n)?, max_depth, precision_bits, true)
}

/// Largest root modulus of `Rel(G_{m,n}^{a,b})` off `q = 1`.
pub fn family_max_modulus(params: &FamilyParams, precision_bits: u32) -> Result<f64> {
    let (_, h) = rel_family(params)?.split_one_minus_q();
    if h.degree().unwrap_or(0) == 0 {
        return Ok(0.0);
    }
    let rs = find_roots(&h, precision_bits)?;
    Ok(max_modulus_root(&rs)?.abs(64).to_f64())
}
