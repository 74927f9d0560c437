//! Local invariants read off a resolution tree: δ^ω, μ^ω, r^ω, their
//! classical counterparts, intersection numbers and dimension formulas.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gcd, is_integer, rat, rat_int, serialize_rat, Rat};
use crate::poly::{weighted_order, SparsePoly};
use crate::quotsing::QuotType;
use crate::resolve::{resolve_factors, resolve_with, Mode, ResolutionTree, ResolveOptions};

/// δ^ω split into the blow-up sum and the Q-smooth leaf corrections, per point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaBreakdown {
    #[serde(serialize_with = "serialize_rat")]
    pub node_sum: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub leaf_correction: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub total: Rat,
    /// `(node id, weighted contribution)` in node order.
    #[serde(serialize_with = "serialize_contribs")]
    pub per_node: Vec<(usize, Rat)>,
}

fn serialize_contribs<S: serde::Serializer>(
    v: &[(usize, Rat)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (id, r) in v {
        seq.serialize_element(
            &serde_json::json!({ "node": id, "contribution": crate::exactnum::rat_to_string(r) }),
        )?;
    }
    seq.end()
}

fn over_root(x: Rat, tree: &ResolutionTree) -> Rat {
    x / Rat::from_integer(tree.root_weight().into())
}

/// δ^ω of the root germ; plain trees include `(d_i − 1)/(2 d_i)` per leaf.
pub fn delta_w(tree: &ResolutionTree) -> DeltaBreakdown {
    let per_node = tree.contributions();
    let node_sum = per_node.iter().fold(Rat::zero(), |acc, (_, c)| acc + c);
    let mut leaf_correction = Rat::zero();
    if tree.mode == Mode::Plain {
        for leaf in &tree.leaves {
            let d = leaf.ambient.d();
            leaf_correction += rat(d - 1, 2 * d) * Rat::from_integer(leaf.orbit_count.into());
        }
    }
    let node_sum = over_root(node_sum, tree);
    let leaf_correction = over_root(leaf_correction, tree);
    let total = &node_sum + &leaf_correction;
    DeltaBreakdown {
        node_sum,
        leaf_correction,
        total,
        per_node,
    }
}

/// Quotient branch count per root point.
pub fn r_w(tree: &ResolutionTree) -> Rat {
    over_root(Rat::from_integer(tree.branch_total().into()), tree)
}

/// Classical δ of a germ in the plane.
pub fn delta_classical(f: &SparsePoly) -> Result<Rat> {
    let tree = resolve_with(
        f,
        QuotType::smooth(),
        &ResolveOptions::with_mode(Mode::Strong),
    )?;
    Ok(delta_w(&tree).total)
}

/// Quotient and upstairs branch counts.
pub fn branch_orbits(tree: &ResolutionTree) -> Result<(Rat, Rat)> {
    let up = resolve_factors(
        &tree.source,
        QuotType::smooth(),
        &ResolveOptions::with_mode(Mode::Strong),
    )?;
    Ok((r_w(tree), r_w(&up)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub ambient: QuotType,
    pub mode: Mode,
    #[serde(serialize_with = "serialize_rat")]
    pub delta_w: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub mu_w: Rat,
    pub r_w: i64,
    #[serde(serialize_with = "serialize_rat")]
    pub delta_classical: Rat,
    pub mu_classical: i64,
    pub r_classical: i64,
    #[serde(serialize_with = "serialize_rat")]
    pub euler_orb: Rat,
    #[serde(serialize_with = "serialize_contribs")]
    pub per_node_contributions: Vec<(usize, Rat)>,
    #[serde(serialize_with = "serialize_rat")]
    pub leaf_correction: Rat,
}

fn to_int(r: &Rat, what: &str) -> Result<i64> {
    if !is_integer(r) {
        return Err(Error::InternalInconsistency(format!(
            "{what} = {r} is not an integer"
        )));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InternalInconsistency(format!("{what} out of range")))
}

pub fn full_report(f: &SparsePoly, ambient: QuotType) -> Result<InvariantReport> {
    full_report_with(f, ambient, &ResolveOptions::default())
}

/// All invariants from a quotient-aware tree and an upstairs tree, with the
/// identities between them re-checked.
pub fn full_report_with(
    f: &SparsePoly,
    ambient: QuotType,
    opts: &ResolveOptions,
) -> Result<InvariantReport> {
    let (tree, report) = report_and_tree(f, ambient, opts)?;
    drop(tree);
    Ok(report)
}

pub fn report_and_tree(
    f: &SparsePoly,
    ambient: QuotType,
    opts: &ResolveOptions,
) -> Result<(ResolutionTree, InvariantReport)> {
    let tree = resolve_with(f, ambient, opts)?;
    let dw = delta_w(&tree);
    let rw = r_w(&tree);
    let up_opts = ResolveOptions {
        mode: Mode::Strong,
        overrides: Vec::new(),
        ..opts.clone()
    };
    let up = resolve_with(f, QuotType::smooth(), &up_opts)?;
    let delta = delta_w(&up).total;
    let r = r_w(&up);
    let d = Rat::from_integer(ambient.d().into());
    let two = rat_int(2);

    let mu_w = &two * &dw.total - &rw + Rat::one();
    let mu = &two * &delta - &r + Rat::one();
    let euler_orb = &rw - &two * &dw.total;

    let expected = &delta / &d + (&rw - &r / &d) / &two;
    if expected != dw.total {
        return Err(Error::InternalInconsistency(format!(
            "δ^ω = {} but δ/d + (r^ω − r/d)/2 = {}",
            dw.total, expected
        )));
    }
    let mu_expected = (&d - Rat::one()) / &d + &mu / &d;
    if mu_expected != mu_w {
        return Err(Error::InternalInconsistency(format!(
            "μ^ω = {mu_w} but (d−1)/d + μ/d = {mu_expected}"
        )));
    }
    let report = InvariantReport {
        ambient,
        mode: opts.mode,
        delta_w: dw.total.clone(),
        mu_w,
        r_w: to_int(&rw, "r^ω")?,
        delta_classical: delta.clone(),
        mu_classical: to_int(&mu, "μ")?,
        r_classical: to_int(&r, "r")?,
        euler_orb,
        per_node_contributions: dw.per_node,
        leaf_correction: dw.leaf_correction,
    };
    to_int(&delta, "δ")?;
    Ok((tree, report))
}

fn check_reduced(f: &SparsePoly) -> Result<()> {
    if f.rational_terms().is_some() && !f.is_squarefree()? {
        return Err(Error::NotReduced);
    }
    Ok(())
}

/// Intersection number `(C·D)` at the origin of the ambient type.
pub fn noether_intersection(c: &SparsePoly, dd: &SparsePoly, ambient: QuotType) -> Result<Rat> {
    check_reduced(c)?;
    check_reduced(dd)?;
    if c.rational_terms().is_some()
        && dd.rational_terms().is_some()
        && !c.mul(dd).is_squarefree()?
    {
        return Err(Error::CommonComponent);
    }
    let tree = resolve_factors(
        &[(0, c.clone()), (1, dd.clone())],
        ambient,
        &ResolveOptions::with_mode(Mode::Plain),
    )?;
    let mut sum = Rat::zero();
    for (node, b) in tree.internal_nodes() {
        let nu_c: u64 = b
            .factor_nu
            .iter()
            .filter(|(t, _)| *t == 0)
            .map(|(_, n)| n)
            .sum();
        let nu_d: u64 = b
            .factor_nu
            .iter()
            .filter(|(t, _)| *t == 1)
            .map(|(_, n)| n)
            .sum();
        let (p, q) = b.weights;
        let num = BigInt::from(nu_c) * BigInt::from(nu_d) * BigInt::from(node.weight);
        let den = BigInt::from(p) * BigInt::from(q) * BigInt::from(node.ambient.d());
        sum += Rat::new(num, den);
    }
    Ok(over_root(sum, &tree))
}

/// `(δ^ω(C·D), δ^ω(C) + δ^ω(D) + (C·D))`.
pub fn delta_additivity_check(
    c: &SparsePoly,
    dd: &SparsePoly,
    ambient: QuotType,
) -> Result<(Rat, Rat)> {
    let cdot = noether_intersection(c, dd, ambient)?;
    let opts = ResolveOptions::with_mode(Mode::Strong);
    let dw =
        |f: &SparsePoly| -> Result<Rat> { Ok(delta_w(&resolve_with(f, ambient, &opts)?).total) };
    let lhs = dw(&c.mul(dd))?;
    let rhs = dw(c)? + dw(dd)? + cdot;
    Ok((lhs, rhs))
}

/// `F(n) = pq n(n+1)/2 − (p−1)(q−1) n/2`.
pub fn monomial_colength(p: u64, q: u64, n: u64) -> Result<u64> {
    if p == 0 || q == 0 || gcd(p as i64, q as i64) != 1 {
        return Err(Error::Degenerate(format!(
            "weights ({p},{q}) must be coprime and positive"
        )));
    }
    Ok((p * q * n * (n + 1) - (p - 1) * (q - 1) * n) / 2)
}

/// Lattice points `(i, j) ≥ 0` with `p i + q j < p q n`, counted directly.
pub fn lattice_count(p: u64, q: u64, n: u64) -> u64 {
    let bound = p * q * n;
    let mut count = 0;
    let mut i = 0;
    while p * i < bound {
        count += (bound - p * i).div_ceil(q);
        i += 1;
    }
    count
}

/// `ν(ν − p − q + 1)/(2pq)` for `ν = ν_{p,q}(f)` a multiple of `pq`.
pub fn one_step_dim(f: &SparsePoly, p: u64, q: u64) -> Result<Rat> {
    let nu = weighted_order(f, p, q)? as i64;
    let (p, q) = (p as i64, q as i64);
    if nu % (p * q) != 0 {
        return Err(Error::NotMultiple { nu, pq: p * q });
    }
    Ok(rat(nu * (nu - p - q + 1), 2 * p * q))
}

/// Closed form of δ^ω for `x^p − y^q` with coprime exponents on `X(d;a,b)`.
pub fn quasihomogeneous_delta(p: i64, q: i64, d: i64) -> Rat {
    rat(p * q - p - q + d, 2 * d)
}
