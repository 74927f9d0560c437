//! Curves in weighted projective planes `P²_ω`: weights, degrees, the
//! virtual genus and the genus of a reduced curve from its singular points.

mod locus;

pub use locus::{singular_locus, SingularCluster};

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gcd, is_nonneg_integer, rat, rat_to_string, Rat, Value};
use crate::invariants::delta_w;
use crate::poly::{parse_poly, SparsePoly};
use crate::quotsing::QuotType;
use crate::resolve::{normalize_germ, resolve_with, Mode, ResolveOptions};

pub const VARS: [&str; 3] = ["x0", "x1", "x2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weights(pub [i64; 3]);

impl Weights {
    pub fn new(w0: i64, w1: i64, w2: i64) -> Result<Self> {
        if w0 < 1 || w1 < 1 || w2 < 1 {
            return Err(Error::BadWeights(format!(
                "({w0},{w1},{w2}) must be positive"
            )));
        }
        if gcd(gcd(w0, w1), w2) != 1 {
            return Err(Error::BadWeights(format!("gcd({w0},{w1},{w2}) != 1")));
        }
        Ok(Weights([w0, w1, w2]))
    }

    pub fn w(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// `ω̄ = w0 w1 w2`.
    pub fn bar(&self) -> i64 {
        self.0.iter().product()
    }

    /// `|ω| = w0 + w1 + w2`.
    pub fn abs(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        (0..3).all(|i| gcd(self.0[(i + 1) % 3], self.0[(i + 2) % 3]) == 1)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl std::str::FromStr for Weights {
    type Err = Error;

    /// `w0,w1,w2`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let ws: Vec<i64> = t
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::BadWeights(format!("expected w0,w1,w2, got `{s}`")))?;
        match ws[..] {
            [a, b, c] => Weights::new(a, b, c),
            _ => Err(Error::BadWeights(format!(
                "expected three weights, got `{s}`"
            ))),
        }
    }
}

pub fn parse_curve(text: &str) -> Result<SparsePoly> {
    parse_poly(text, &VARS)
}

/// Reduces to pairwise coprime weights, dividing the exponents of `X_i` by
/// `d_i = gcd(w_j, w_k)` at each step.
pub fn normalize_weights(w: Weights, f: &SparsePoly) -> Result<(Weights, SparsePoly)> {
    let mut w = w.0;
    let mut f = f.clone();
    loop {
        let dv: Vec<i64> = (0..3)
            .map(|i| gcd(w[(i + 1) % 3], w[(i + 2) % 3]))
            .collect();
        if dv.iter().all(|&x| x == 1) {
            return Ok((Weights(w), f));
        }
        for (i, &di) in dv.iter().enumerate() {
            if f.terms().any(|(e, _)| e[i] as i64 % di != 0) {
                return Err(Error::NonDivisibleExponent { var: i, by: di });
            }
        }
        f = f.map_exponents(|e| (0..3).map(|i| (e[i] as i64 / dv[i]) as u32).collect());
        for i in 0..3 {
            w[i] /= dv[(i + 1) % 3] * dv[(i + 2) % 3];
        }
    }
}

/// Common ω-degree of the monomials of `f`.
pub fn wdegree(f: &SparsePoly, w: &Weights) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = |e: &[u32]| (0..3).map(|i| e[i] as i64 * w.w(i)).sum::<i64>();
    let top = f.terms().next().map(|(e, _)| deg(e)).unwrap();
    let bad: Vec<String> = f
        .terms()
        .filter(|(e, _)| deg(e) != top)
        .map(|(e, _)| format!("x0^{} x1^{} x2^{}", e[0], e[1], e[2]))
        .collect();
    if bad.is_empty() {
        Ok(top)
    } else {
        Err(Error::NotQuasiHomogeneous(bad.join(", ")))
    }
}

/// `g_{d,ω} = d(d − |ω|)/(2ω̄) + 1`.
pub fn virtual_genus(d: i64, w: &Weights) -> Rat {
    rat(d * (d - w.abs()), 2 * w.bar()) + rat(1, 1)
}

/// Intersection number of curves of degrees `d1`, `d2` without common components.
pub fn bezout(d1: i64, d2: i64, w: &Weights) -> Rat {
    rat(d1 * d2, w.bar())
}

/// Whether smooth curves of degree `d` transversal to the axes exist.
pub fn smoothness_certificate(d: i64, w: &Weights) -> bool {
    d % w.bar() == 0
}

/// A point given by a representative with one coordinate equal to 1, or a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub coords: [Rat; 3],
    pub chart: usize,
}

impl ProjPoint {
    pub fn vertex(i: usize) -> Self {
        let mut coords = [Rat::zero(), Rat::zero(), Rat::zero()];
        coords[i] = rat(1, 1);
        ProjPoint { coords, chart: i }
    }

    pub fn new(coords: [Rat; 3]) -> Result<Self> {
        let nz: Vec<usize> = (0..3).filter(|&i| !coords[i].is_zero()).collect();
        if nz.is_empty() {
            return Err(Error::Degenerate("all coordinates are zero".into()));
        }
        if let [i] = nz[..] {
            return Ok(ProjPoint::vertex(i));
        }
        let chart = nz
            .iter()
            .copied()
            .find(|&i| coords[i] == rat(1, 1))
            .ok_or_else(|| {
                Error::Degenerate("a non-vertex point needs a coordinate equal to 1".into())
            })?;
        Ok(ProjPoint { coords, chart })
    }

    pub fn vertex_index(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..3).filter(|&i| !self.coords[i].is_zero()).collect();
        match nz[..] {
            [i] => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

impl std::str::FromStr for ProjPoint {
    type Err = Error;

    /// `[c0:c1:c2]` with rational entries.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Degenerate(format!("expected [c0:c1:c2], got `{s}`"));
        let t = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let cs: Vec<Rat> = t
            .split(':')
            .map(crate::exactnum::rat_from_str)
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let cs: [Rat; 3] = cs.try_into().map_err(|_| bad())?;
        ProjPoint::new(cs)
    }
}

/// `F` with `X_i = 1`, in the remaining two variables (in increasing order)
/// renamed to `x`, `y`.
pub(crate) fn dehomogenize(f: &SparsePoly, i: usize) -> SparsePoly {
    let keep: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let mut out = SparsePoly::zero(f.field(), &["x", "y"]);
    for (e, c) in f.terms() {
        out.add_term(vec![e[keep[0]], e[keep[1]]], c.clone());
    }
    out
}

/// Local germ at `p` and the ambient quotient type. Non-vertex points need
/// pairwise coprime weights and are smooth points of the plane.
pub fn localize(f: &SparsePoly, w: &Weights, p: &ProjPoint) -> Result<(SparsePoly, QuotType)> {
    let i = p.chart;
    let g = dehomogenize(f, i);
    if let Some(v) = p.vertex_index() {
        let (j, k) = (
            (0..3).find(|&j| j != v).unwrap(),
            (0..3).rev().find(|&k| k != v).unwrap(),
        );
        if g.terms().any(|(e, _)| e[0] == 0 && e[1] == 0) {
            return Err(Error::PointNotOnCurve);
        }
        return normalize_germ(&g, w.w(v), w.w(j), w.w(k));
    }
    if !w.is_normalized() {
        return Err(Error::BadWeights(format!("{w} is not pairwise coprime")));
    }
    let keep: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let q = |r: &Rat| Value::Q(r.clone());
    let germ = g
        .translate(0, &q(&p.coords[keep[0]]))
        .translate(1, &q(&p.coords[keep[1]]));
    if germ.terms().any(|(e, _)| e[0] == 0 && e[1] == 0) {
        return Err(Error::PointNotOnCurve);
    }
    Ok((germ, QuotType::smooth()))
}

/// One summand of the genus formula.
#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    /// Human-readable location, with the defining polynomials of any algebraic coordinates.
    pub point: String,
    pub chart: usize,
    pub ambient: QuotType,
    pub germ: String,
    /// Number of points of the affine chart in this cluster.
    pub affine_points: usize,
    /// δ^ω summed over the affine cluster.
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub delta_total: Rat,
    /// Contribution to the genus formula, `delta_total / w_chart`; for vertices
    /// this is δ^ω of the vertex.
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub delta_w: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusReport {
    pub schema_version: u32,
    pub input_weights: Weights,
    pub weights: Weights,
    pub curve: String,
    pub degree: i64,
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub virtual_genus: Rat,
    pub smooth_transversal_exists: bool,
    pub points: Vec<PointReport>,
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub delta_sum: Rat,
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub genus: Rat,
    /// Set when the value is not a non-negative integer, which happens for
    /// reducible curves.
    pub warning: Option<String>,
}

impl GenusReport {
    pub fn summary(&self) -> String {
        format!(
            "d = {}, ω = {}, g_(d,ω) = {}, Σ δ^ω = {}, g = {}",
            self.degree,
            self.weights,
            rat_to_string(&self.virtual_genus),
            rat_to_string(&self.delta_sum),
            rat_to_string(&self.genus)
        )
    }
}

fn check_reduced(f: &SparsePoly) -> Result<()> {
    if f.rational_terms().is_none() {
        return Err(Error::Degenerate(
            "curve coefficients must be rational".into(),
        ));
    }
    for i in 0..3 {
        if f.min_exponent(i) > 1 {
            return Err(Error::NotReduced);
        }
    }
    let g = dehomogenize(f, 0);
    let (_, _, h) = crate::resolve::axis_split(&g);
    if h.len() > 1 && !h.is_squarefree()? {
        return Err(Error::NotReduced);
    }
    Ok(())
}

fn vertex_report(
    f: &SparsePoly,
    w: &Weights,
    i: usize,
    opts: &ResolveOptions,
) -> Result<Option<PointReport>> {
    let p = ProjPoint::vertex(i);
    let (germ, ambient) = match localize(f, w, &p) {
        Ok(x) => x,
        Err(Error::PointNotOnCurve) => return Ok(None),
        Err(e) => return Err(e),
    };
    let tree = resolve_with(&germ, ambient, opts)?;
    let dw = delta_w(&tree).total;
    Ok(Some(PointReport {
        point: format!("P{i} = {p}"),
        chart: i,
        ambient,
        germ: germ.to_string(),
        affine_points: 1,
        delta_total: dw.clone(),
        delta_w: dw,
    }))
}

/// Genus of the normalization of `{F = 0}`, with the singular locus found
/// automatically.
pub fn genus(f: &SparsePoly, w: &Weights) -> Result<GenusReport> {
    genus_with(f, w, None)
}

/// As [`genus`]; `points`, when given, replaces the search for non-vertex
/// singular points (vertices on the curve are always included).
pub fn genus_with(
    f: &SparsePoly,
    w: &Weights,
    points: Option<&[ProjPoint]>,
) -> Result<GenusReport> {
    let input_weights = *w;
    let (w, f) = normalize_weights(*w, f)?;
    let d = wdegree(&f, &w)?;
    check_reduced(&f)?;
    let opts = ResolveOptions::with_mode(Mode::Strong);
    let mut reports = Vec::new();
    for i in 0..3 {
        reports.extend(vertex_report(&f, &w, i, &opts)?);
    }
    match points {
        None => {
            for c in singular_locus(&f, &w, &opts)? {
                reports.push(c.report(&f, &w, &opts)?);
            }
        }
        Some(ps) => {
            for p in ps.iter().filter(|p| p.vertex_index().is_none()) {
                let (germ, ambient) = localize(&f, &w, p)?;
                let tree = resolve_with(&germ, ambient, &opts)?;
                let dw = delta_w(&tree).total;
                reports.push(PointReport {
                    point: p.to_string(),
                    chart: p.chart,
                    ambient,
                    germ: germ.to_string(),
                    affine_points: 1,
                    delta_total: dw.clone(),
                    delta_w: dw,
                });
            }
        }
    }
    let delta_sum: Rat = reports.iter().map(|r| r.delta_w.clone()).sum();
    let vg = virtual_genus(d, &w);
    let g = &vg - &delta_sum;
    let warning = (!is_nonneg_integer(&g)).then(|| {
        format!(
            "genus formula gives {}{}; the curve is possibly reducible and the value is virtual",
            rat_to_string(&g),
            if g.is_negative() { " (negative)" } else { "" }
        )
    });
    Ok(GenusReport {
        schema_version: crate::resolve::SCHEMA_VERSION,
        input_weights,
        weights: w,
        curve: f.to_string(),
        degree: d,
        virtual_genus: vg,
        smooth_transversal_exists: smoothness_certificate(d, &w),
        points: reports,
        delta_sum,
        genus: g,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64, c: i64) -> Weights {
        Weights::new(a, b, c).unwrap()
    }

    fn g(f: &str, ws: Weights) -> GenusReport {
        genus(&parse_curve(f).unwrap(), &ws).unwrap()
    }

    #[test]
    fn weight_normalization() {
        let f = parse_curve("x0^5 + x1^2*x0 + x2^2").unwrap();
        let (ws, h) = normalize_weights(w(2, 4, 5), &f).unwrap();
        assert_eq!(ws, w(1, 2, 5));
        assert_eq!(h, parse_curve("x0^5 + x1^2*x0 + x2").unwrap());
        let (ws, h) =
            normalize_weights(w(6, 10, 15), &parse_curve("x0^5 + x1^3 + x2^2").unwrap()).unwrap();
        assert_eq!(ws, w(1, 1, 1));
        assert_eq!(h, parse_curve("x0 + x1 + x2").unwrap());
        let e = normalize_weights(w(2, 4, 5), &parse_curve("x2").unwrap());
        assert!(matches!(
            e,
            Err(Error::NonDivisibleExponent { var: 2, by: 2 })
        ));
    }

    #[test]
    fn degrees() {
        assert_eq!(
            wdegree(&parse_curve("x0*x1 - x2").unwrap(), &w(2, 3, 5)).unwrap(),
            5
        );
        assert_eq!(
            wdegree(
                &parse_curve("x0*x1*x2 + (x0^3 - x1^2)^2").unwrap(),
                &w(2, 3, 7)
            )
            .unwrap(),
            12
        );
        assert!(matches!(
            wdegree(&parse_curve("x0 + x1").unwrap(), &w(1, 2, 3)),
            Err(Error::NotQuasiHomogeneous(_))
        ));
    }

    #[test]
    fn virtual_genus_values() {
        assert_eq!(virtual_genus(5, &w(2, 3, 5)), rat(7, 12));
        assert_eq!(virtual_genus(40, &w(2, 3, 5)), rat(21, 1));
        for d in 1..=10 {
            assert_eq!(virtual_genus(d, &w(1, 1, 1)), rat((d - 1) * (d - 2), 2));
        }
        assert_eq!(bezout(2, 3, &w(2, 3, 5)), rat(1, 5));
        assert!(smoothness_certificate(30, &w(2, 3, 5)));
        assert!(!smoothness_certificate(5, &w(2, 3, 5)));
    }

    #[test]
    fn localize_vertex() {
        let f = parse_curve("x0*x1*x2 + (x0^3 - x1^2)^2").unwrap();
        let (germ, t) = localize(&f, &w(2, 3, 7), &ProjPoint::vertex(2)).unwrap();
        assert_eq!(t, QuotType::new(7, 2, 3).unwrap());
        assert_eq!(
            germ,
            crate::poly::parse_poly("x*y + (x^3 - y^2)^2", &["x", "y"]).unwrap()
        );
        assert!(matches!(
            localize(&f, &w(2, 3, 7), &ProjPoint::vertex(0)),
            Err(Error::PointNotOnCurve)
        ));
    }

    #[test]
    fn worked_genus_examples() {
        for (a, b) in [(2, 3), (3, 4)] {
            let r = g("x0*x1 - x2", w(a, b, a + b));
            assert_eq!(r.genus, rat(0, 1), "{}", r.summary());
            assert_eq!(r.points.len(), 2);
        }
        for k in 1..=3 {
            let r = g("x0*x1 - x2^2", w(2 * k - 1, 2 * k + 1, 2 * k));
            assert_eq!(r.genus, rat(0, 1), "{}", r.summary());
        }
        let r = g("x0*x1*x2 + (x0^3 - x1^2)^2", w(2, 3, 7));
        assert_eq!(r.virtual_genus, rat(1, 1));
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].delta_w, rat(1, 1));
        assert_eq!(r.genus, rat(0, 1));
        assert!(r.warning.is_none());
    }

    #[test]
    fn classical_plane_curves() {
        let cusp = g("x1^2*x0 - x2^3", w(1, 1, 1));
        assert_eq!(cusp.genus, rat(0, 1), "{}", cusp.summary());
        let node = g("x1^2*x0 - x2^2*x0 - x2^3", w(1, 1, 1));
        assert_eq!(node.genus, rat(0, 1), "{}", node.summary());
        let smooth = g("x0^3 + x1^3 + x2^3", w(1, 1, 1));
        assert_eq!(smooth.genus, rat(1, 1));
        assert!(smooth.points.is_empty());
        let tacnode = g("x1^4 - x1^2*x2*x0 + x2^4 - x0^2*x2^2", w(1, 1, 1));
        assert!(is_nonneg_integer(&tacnode.genus), "{}", tacnode.summary());
        let lines = g("x0*x1*x2", w(1, 1, 1));
        assert!(lines.warning.is_some());
    }

    #[test]
    fn fermat_curves() {
        for (ws, d) in [
            (w(1, 1, 1), 4),
            (w(1, 1, 1), 6),
            (w(1, 1, 2), 4),
            (w(1, 1, 2), 8),
            (w(2, 3, 5), 30),
            (w(1, 3, 5), 30),
        ] {
            let f = format!(
                "x0^{} + x1^{} + x2^{}",
                d / ws.w(0),
                d / ws.w(1),
                d / ws.w(2)
            );
            let r = g(&f, ws);
            assert_eq!(r.genus, virtual_genus(d, &ws), "{f}: {}", r.summary());
            assert!(r.points.is_empty());
        }
        assert_eq!(virtual_genus(30, &w(1, 3, 5)), rat(22, 1));
    }

    #[test]
    fn algebraic_singular_points() {
        let r = g("(x1^2 - 2*x0^2)^2 - x2^2*x0^2 - x2^4", w(1, 1, 1));
        assert!(is_nonneg_integer(&r.genus), "{}", r.summary());
        assert!(
            r.points.iter().any(|p| p.affine_points == 2),
            "{:?}",
            r.points
        );
    }

    #[test]
    fn permutation_invariance() {
        let f = parse_curve("x0*x1*x2 + (x0^3 - x1^2)^2").unwrap();
        let base = genus(&f, &w(2, 3, 7)).unwrap().genus;
        let perms = [[0, 2, 1], [1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        for p in perms {
            let h = f.map_exponents(|e| vec![e[p[0]], e[p[1]], e[p[2]]]);
            let ws = Weights([[2, 3, 7][p[0]], [2, 3, 7][p[1]], [2, 3, 7][p[2]]]);
            assert_eq!(genus(&h, &ws).unwrap().genus, base, "{p:?}");
        }
    }

    #[test]
    fn explicit_points() {
        let f = parse_curve("x1^2*x0 - x2^2*x0 - x2^3").unwrap();
        let pts = ["[1:0:0]".parse::<ProjPoint>().unwrap()];
        let r = genus_with(&f, &w(1, 1, 1), Some(&pts)).unwrap();
        assert_eq!(r.genus, rat(0, 1));
        let off = ["[1:1:1]".parse::<ProjPoint>().unwrap()];
        assert!(matches!(
            genus_with(&f, &w(1, 1, 1), Some(&off)),
            Err(Error::PointNotOnCurve)
        ));
    }
}
