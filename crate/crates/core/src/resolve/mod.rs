//! Embedded Q-resolution of curve germs on `X(d;a,b)` by iterated weighted
//! blow-ups, computed over lazily split towers of algebraic extensions.

mod export;

pub use export::{tree_to_dot, tree_to_json, SCHEMA_VERSION};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{mod_inverse, rat, AdjoinError, ExtError, ExtField, Rat, SplitEvent, Value};
use crate::poly::{
    blowup_transform, newton_polygon, squarefree_part, weighted_order, Chart, SparsePoly,
};
use crate::quotsing::{normalize_with_divisors, QuotType};

pub const DEFAULT_EXT_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Leaves sit at smooth surface points.
    Strong,
    /// Leaves are Q-smooth branches, possibly at singular points.
    Plain,
}

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    pub mode: Mode,
    /// Weights for the first blow-ups, consumed in depth-first node order.
    pub overrides: Vec<(u64, u64)>,
    pub ext_bound: usize,
    pub max_depth: usize,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        let ext_bound = std::env::var("QRES_EXT_BOUND")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_EXT_BOUND);
        ResolveOptions {
            mode: Mode::Strong,
            overrides: Vec::new(),
            ext_bound,
            max_depth: 200,
        }
    }
}

impl ResolveOptions {
    pub fn with_mode(mode: Mode) -> Self {
        ResolveOptions {
            mode,
            ..Default::default()
        }
    }
}

/// Where a node sits relative to the blow-up that created it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Root,
    Chart1Origin,
    Chart2Origin,
    /// Points of the exceptional divisor cut out by `minpoly(u) = 0` in the
    /// invariant chart coordinate `u`.
    OnExceptional {
        minpoly: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Blowup {
    pub weights: (u64, u64),
    pub e: i64,
    pub nu: u64,
    /// Weighted order of each tracked factor, by tag.
    pub factor_nu: Vec<(usize, u64)>,
    /// `ν(ν − p − q + e) / (2 d p q)` for a single point of the cluster.
    #[serde(serialize_with = "crate::exactnum::serialize_rat")]
    pub contribution: Rat,
    pub chart1: QuotType,
    pub chart2: QuotType,
}

#[derive(Clone, Debug)]
pub struct ResolutionNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub ambient: QuotType,
    pub location: Location,
    /// Number of conjugate points this node stands for.
    pub weight: usize,
    /// Local equation; absent for leaves found as simple points on a divisor.
    pub germ: Option<SparsePoly>,
    /// `None` for leaves.
    pub blowup: Option<Blowup>,
}

impl ResolutionNode {
    pub fn is_leaf(&self) -> bool {
        self.blowup.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchLeaf {
    pub node: usize,
    pub ambient: QuotType,
    /// Quotient branches represented by this leaf.
    pub orbit_count: usize,
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub mode: Mode,
    pub root_ambient: QuotType,
    /// Several roots appear only when the coefficient field splits at the root.
    pub roots: Vec<usize>,
    pub nodes: Vec<ResolutionNode>,
    pub leaves: Vec<BranchLeaf>,
    /// Root germ factors as given.
    pub source: Vec<(usize, SparsePoly)>,
}

impl ResolutionTree {
    pub fn root_weight(&self) -> usize {
        self.roots.iter().map(|&r| self.nodes[r].weight).sum()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = (&ResolutionNode, &Blowup)> {
        self.nodes
            .iter()
            .filter_map(|n| n.blowup.as_ref().map(|b| (n, b)))
    }

    /// Weighted per-node contributions, in node order.
    pub fn contributions(&self) -> Vec<(usize, Rat)> {
        self.internal_nodes()
            .map(|(n, b)| (n.id, &b.contribution * Rat::from_integer(n.weight.into())))
            .collect()
    }

    /// Total number of quotient branches, over all conjugate roots.
    pub fn branch_total(&self) -> usize {
        self.leaves.iter().map(|l| l.orbit_count).sum()
    }
}

/// `f = x^α y^β g` with `x ∤ g`, `y ∤ g`.
pub fn axis_split(f: &SparsePoly) -> (u32, u32, SparsePoly) {
    let c = f.monomial_content();
    (c[0], c[1], f.div_monomial(&c))
}

/// `f(x, y + r)`.
pub fn translate_root(f: &SparsePoly, r: &Value) -> SparsePoly {
    f.translate(1, r)
}

/// The common residue `a i + b j mod d` of all monomials, if there is one.
pub fn semi_invariance_check(f: &SparsePoly, t: &QuotType) -> Option<i64> {
    let mut res = None;
    for (e, _) in f.terms() {
        let r = t.residue(e[0], e[1]);
        match res {
            None => res = Some(r),
            Some(s) if s != r => return None,
            _ => {}
        }
    }
    res
}

/// Rewrites a germ given on a possibly non-normalized `X(d;a,b)` on the
/// normalized type.
pub fn normalize_germ(f: &SparsePoly, d: i64, a: i64, b: i64) -> Result<(SparsePoly, QuotType)> {
    let n = normalize_with_divisors(d, a, b)?;
    let g = divide_exponents(f, n.div_x, n.div_y).map_err(|_| {
        let (var, by) = f
            .terms()
            .find_map(|(e, _)| {
                if e[0] as i64 % n.div_x != 0 {
                    Some((0, n.div_x))
                } else if e[1] as i64 % n.div_y != 0 {
                    Some((1, n.div_y))
                } else {
                    None
                }
            })
            .unwrap_or((0, 1));
        Error::NonDivisibleExponent { var, by }
    })?;
    Ok((g, n.t))
}

fn divide_exponents(f: &SparsePoly, dx: i64, dy: i64) -> Result<SparsePoly> {
    if dx == 1 && dy == 1 {
        return Ok(f.clone());
    }
    if f.terms()
        .any(|(e, _)| e[0] as i64 % dx != 0 || e[1] as i64 % dy != 0)
    {
        return Err(Error::InternalInconsistency(format!(
            "exponents not divisible by ({dx},{dy})"
        )));
    }
    Ok(f.map_exponents(|e| vec![(e[0] as i64 / dx) as u32, (e[1] as i64 / dy) as u32]))
}

/// Face selection: maximal `p + q`, then lexicographically largest; `(1,1)`
/// for a monomial times a unit.
pub fn choose_weights(f: &SparsePoly) -> Result<(u64, u64)> {
    if f.len() <= 1 {
        return Err(Error::Degenerate(
            "cannot choose weights for a monomial".into(),
        ));
    }
    match newton_polygon(f) {
        Ok(np) => Ok(np
            .faces
            .iter()
            .map(|fc| fc.normal)
            .max_by_key(|&(p, q)| (p + q, p, q))
            .unwrap_or((1, 1))),
        Err(Error::Degenerate(_)) => Ok((1, 1)),
        Err(e) => Err(e),
    }
}

/// Resolves a reduced germ with rational or algebraic coefficients.
pub fn resolve_germ(f: &SparsePoly, ambient: QuotType, mode: Mode) -> Result<ResolutionTree> {
    resolve_with(f, ambient, &ResolveOptions::with_mode(mode))
}

pub fn resolve_with(
    f: &SparsePoly,
    ambient: QuotType,
    opts: &ResolveOptions,
) -> Result<ResolutionTree> {
    resolve_factors(&[(0, f.clone())], ambient, opts)
}

/// Resolves the product of tagged factors, tracking each factor's weighted
/// order at every blow-up. Axis components are split off as separate factors.
pub fn resolve_factors(
    factors: &[(usize, SparsePoly)],
    ambient: QuotType,
    opts: &ResolveOptions,
) -> Result<ResolutionTree> {
    let Some((_, first)) = factors.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let field = first.field().clone();
    let mut split = Vec::new();
    let mut product = first.constant_like(field.one());
    for (tag, f) in factors {
        if f.nvars() != 2 {
            return Err(Error::Degenerate("germs must be bivariate".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.field() != &field {
            return Err(Error::Degenerate("factors over different fields".into()));
        }
        if semi_invariance_check(f, &ambient).is_none() {
            return Err(Error::NotSemiInvariant(ambient.to_string()));
        }
        product = product.mul(f);
        let (alpha, beta, g) = axis_split(f);
        if alpha > 1 || beta > 1 {
            return Err(Error::NotReduced);
        }
        let fx = f.zero_like().var_like(0);
        let fy = f.zero_like().var_like(1);
        if alpha == 1 {
            split.push((*tag, fx));
        }
        if beta == 1 {
            split.push((*tag, fy));
        }
        if !g.terms().all(|(e, _)| e[0] == 0 && e[1] == 0) {
            split.push((*tag, g));
        }
    }
    if product.rational_terms().is_some() && !product.is_squarefree()? {
        return Err(Error::NotReduced);
    }
    if field.degree() > opts.ext_bound {
        return Err(Error::ExtensionOverflow {
            degree: field.degree(),
            bound: opts.ext_bound,
        });
    }
    let mut eng = Engine {
        opts,
        next_override: 0,
        nodes: Vec::new(),
        leaves: Vec::new(),
        roots: Vec::new(),
    };
    let job = Job {
        field,
        factors: split,
        ambient,
        location: Location::Root,
    };
    eng.run(job, None, 0)?;
    if eng.roots.is_empty() {
        return Err(Error::Degenerate(
            "germ does not vanish at the origin".into(),
        ));
    }
    Ok(ResolutionTree {
        mode: opts.mode,
        root_ambient: ambient,
        roots: eng.roots,
        nodes: eng.nodes,
        leaves: eng.leaves,
        source: factors.to_vec(),
    })
}

#[derive(Clone, Debug)]
struct Job {
    field: ExtField,
    factors: Vec<(usize, SparsePoly)>,
    ambient: QuotType,
    location: Location,
}

impl Job {
    fn project(&self, k: &ExtField) -> Job {
        Job {
            field: k.clone(),
            factors: self
                .factors
                .iter()
                .map(|(t, f)| (*t, f.project(k)))
                .collect(),
            ambient: self.ambient,
            location: self.location.clone(),
        }
    }
}

enum Fail {
    Split(SplitEvent),
    Err(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

impl From<ExtError> for Fail {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::Split(s) => Fail::Split(s),
            ExtError::DivisionByZero => Fail::Err(Error::DivisionByZero),
        }
    }
}

enum Child {
    Job(Job),
    Leaf { weight: usize, minpoly: String },
}

enum Local {
    Empty,
    Leaf {
        germ: SparsePoly,
    },
    Blowup {
        germ: SparsePoly,
        blowup: Blowup,
        children: Vec<Child>,
    },
}

struct Engine<'a> {
    opts: &'a ResolveOptions,
    next_override: usize,
    nodes: Vec<ResolutionNode>,
    leaves: Vec<BranchLeaf>,
    roots: Vec<usize>,
}

impl Engine<'_> {
    fn push(
        &mut self,
        parent: Option<usize>,
        job: &Job,
        weight: usize,
        germ: Option<SparsePoly>,
        blowup: Option<Blowup>,
        location: Location,
    ) -> usize {
        let id = self.nodes.len();
        let leaf = blowup.is_none();
        let ambient = job.ambient;
        self.nodes.push(ResolutionNode {
            id,
            parent,
            children: Vec::new(),
            ambient,
            location,
            weight,
            germ,
            blowup,
        });
        match parent {
            Some(p) => self.nodes[p].children.push(id),
            None => self.roots.push(id),
        }
        if leaf {
            self.leaves.push(BranchLeaf {
                node: id,
                ambient,
                orbit_count: weight,
            });
        }
        id
    }

    fn run(&mut self, job: Job, parent: Option<usize>, depth: usize) -> Result<()> {
        if depth > self.opts.max_depth {
            return Err(Error::InternalInconsistency(
                "resolution depth limit exceeded".into(),
            ));
        }
        let saved = self.next_override;
        match self.local(&job) {
            Err(Fail::Split(ev)) => {
                self.next_override = saved;
                let (k1, k2) = job.field.split(&ev);
                self.run(job.project(&k1), parent, depth)?;
                self.run(job.project(&k2), parent, depth)
            }
            Err(Fail::Err(e)) => Err(e),
            Ok(Local::Empty) => Ok(()),
            Ok(Local::Leaf { germ }) => {
                self.push(
                    parent,
                    &job,
                    job.field.degree(),
                    Some(germ),
                    None,
                    job.location.clone(),
                );
                Ok(())
            }
            Ok(Local::Blowup {
                germ,
                blowup,
                children,
            }) => {
                let id = self.push(
                    parent,
                    &job,
                    job.field.degree(),
                    Some(germ),
                    Some(blowup),
                    job.location.clone(),
                );
                for c in children {
                    match c {
                        Child::Job(j) => self.run(j, Some(id), depth + 1)?,
                        Child::Leaf { weight, minpoly } => {
                            let leaf_job = Job {
                                field: job.field.clone(),
                                factors: Vec::new(),
                                ambient: QuotType::smooth(),
                                location: Location::Root,
                            };
                            self.push(
                                Some(id),
                                &leaf_job,
                                weight,
                                None,
                                None,
                                Location::OnExceptional { minpoly },
                            );
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn take_override(&mut self) -> Option<(u64, u64)> {
        let w = self.opts.overrides.get(self.next_override).copied();
        if w.is_some() {
            self.next_override += 1;
        }
        w
    }

    fn local(&mut self, job: &Job) -> std::result::Result<Local, Fail> {
        let ctx = job.field.ctx();
        let mut factors = Vec::new();
        for (tag, f) in &job.factors {
            if !ctx.nonzero(&f.constant_term())? {
                f.check_units()?;
                factors.push((*tag, f.clone()));
            }
        }
        if factors.is_empty() {
            return Ok(Local::Empty);
        }
        let mut germ = factors[0].1.constant_like(job.field.one());
        for (_, f) in &factors {
            germ = germ.mul(f);
        }
        germ.check_units()?;
        let t = job.ambient;
        let d = t.d();
        if germ.order() == 1 && (self.opts.mode == Mode::Plain || d == 1) {
            return Ok(Local::Leaf { germ });
        }

        let (p, q) = match self.take_override() {
            Some(w) => w,
            None if germ.order() == 1 => {
                let (a, b) = (t.a(), t.b());
                let has_y = !ctx.is_zero(&germ.coeff(&[0, 1]));
                let has_x = !ctx.is_zero(&germ.coeff(&[1, 0]));
                if has_x && has_y {
                    (1, 1)
                } else if has_y {
                    let q = (b * mod_inverse(a, d)?).rem_euclid(d);
                    (1, if q == 0 { d } else { q } as u64)
                } else {
                    let p = (a * mod_inverse(b, d)?).rem_euclid(d);
                    (if p == 0 { d } else { p } as u64, 1)
                }
            }
            None if germ.len() == 1 => (1, 1),
            None => choose_weights(&germ)?,
        };
        let (pi, qi) = (p as i64, q as i64);
        let mut factor_nu = Vec::new();
        let mut nu = 0u64;
        for (tag, f) in &factors {
            let n = weighted_order(f, p, q)?;
            factor_nu.push((*tag, n));
            nu += n;
        }
        let e = crate::exactnum::gcd(d, pi * t.b() - qi * t.a());
        let n = nu as i64;
        let contribution = rat(n * (n - pi - qi + e), 2 * d * pi * qi);
        let a1 = mod_inverse(t.a(), d)?;
        let b1 = mod_inverse(t.b(), d)?;
        let n1 = normalize_with_divisors(pi * d, 1, -qi + a1 * pi * t.b())?;
        let n2 = normalize_with_divisors(qi * d, -pi + b1 * qi * t.a(), 1)?;

        let mut chart1 = Vec::new();
        let mut chart2 = Vec::new();
        for (tag, f) in &factors {
            let (_, s1) = blowup_transform(f, p, q, Chart::One)?;
            chart1.push((*tag, divide_exponents(&s1, n1.div_x, n1.div_y)?));
            let (_, s2) = blowup_transform(f, p, q, Chart::Two)?;
            chart2.push((*tag, divide_exponents(&s2, n2.div_x, n2.div_y)?));
        }

        let mut children = vec![Child::Job(Job {
            field: job.field.clone(),
            factors: chart1.clone(),
            ambient: n1.t,
            location: Location::Chart1Origin,
        })];
        self.exceptional_points(job, &chart1, &n1.t, &mut children)?;
        children.push(Child::Job(Job {
            field: job.field.clone(),
            factors: chart2,
            ambient: n2.t,
            location: Location::Chart2Origin,
        }));

        let blowup = Blowup {
            weights: (p, q),
            e,
            nu,
            factor_nu,
            contribution,
            chart1: n1.t,
            chart2: n2.t,
        };
        Ok(Local::Blowup {
            germ,
            blowup,
            children,
        })
    }

    /// Points of the exceptional divisor away from both chart origins, seen
    /// in chart 1 through the invariant coordinates `u = y^D`, `v = x y^m`.
    fn exceptional_points(
        &self,
        job: &Job,
        chart1: &[(usize, SparsePoly)],
        t: &QuotType,
        out: &mut Vec<Child>,
    ) -> std::result::Result<(), Fail> {
        let dd = t.d();
        let m = if dd == 1 {
            0
        } else {
            (-t.a() * mod_inverse(t.b(), dd)?).rem_euclid(dd)
        };
        let mut uv = Vec::new();
        for (tag, f) in chart1 {
            uv.push((*tag, to_invariant_coords(f, dd, m)?));
        }
        let mut h = uv[0].1.constant_like(job.field.one());
        for (_, f) in &uv {
            h = h.mul(f);
        }
        let ctx = job.field.ctx();
        let mut phi: Vec<Value> = h
            .terms()
            .filter(|(e, _)| e[0] == 0)
            .map(|(e, _)| e[1])
            .max()
            .map_or(Vec::new(), |n| vec![ctx.zero(); n as usize + 1]);
        for (e, c) in h.terms().filter(|(e, _)| e[0] == 0) {
            phi[e[1] as usize] = c.clone();
        }
        let low = phi.iter().position(|c| !ctx.is_zero(c)).unwrap_or(0);
        let phi: Vec<Value> = phi[low..].to_vec();
        if phi.len() <= 1 {
            return Ok(());
        }
        let phi_poly = SparsePoly::from_dense(&job.field, &["u"], 0, &phi);
        let (_, parts) = squarefree_part(&phi_poly)?;
        for (psi, mult) in parts {
            let psi_dense = psi.to_dense(0);
            let deg = psi_dense.len() - 1;
            let label = psi.to_string();
            if mult == 1 {
                out.push(Child::Leaf {
                    weight: deg * job.field.degree(),
                    minpoly: label,
                });
                continue;
            }
            let (field, alpha) = if deg == 1 {
                (job.field.clone(), ctx.neg(&psi_dense[0]))
            } else {
                let name = format!("a{}", job.field.depth() + 1);
                let k = match job.field.adjoin(&name, &psi_dense) {
                    Ok(k) => k,
                    Err(AdjoinError::Ext(e)) => return Err(e.into()),
                    Err(other) => {
                        return Err(Fail::Err(Error::InternalInconsistency(format!(
                            "adjoin failed: {other:?}"
                        ))))
                    }
                };
                if k.degree() > self.opts.ext_bound {
                    return Err(Fail::Err(Error::ExtensionOverflow {
                        degree: k.degree(),
                        bound: self.opts.ext_bound,
                    }));
                }
                let g = k.generator();
                (k, g)
            };
            let factors = uv
                .iter()
                .map(|(tag, f)| (*tag, f.lift(&field).translate(1, &alpha)))
                .collect();
            out.push(Child::Job(Job {
                field,
                factors,
                ambient: QuotType::smooth(),
                location: Location::OnExceptional { minpoly: label },
            }));
        }
        Ok(())
    }
}

/// Rewrites a semi-invariant chart germ in the coordinates `v = x y^m`,
/// `u = y^D`, dividing by the unit power of `y` and clearing negative powers of `u`.
fn to_invariant_coords(f: &SparsePoly, dd: i64, m: i64) -> Result<SparsePoly> {
    let mut j0 = None;
    let mut ks = Vec::new();
    for (e, _) in f.terms() {
        let s = e[1] as i64 - m * e[0] as i64;
        let r = s.rem_euclid(dd);
        match j0 {
            None => j0 = Some(r),
            Some(r0) if r0 != r => {
                return Err(Error::InternalInconsistency(
                    "chart germ is not semi-invariant".into(),
                ))
            }
            _ => {}
        }
        ks.push((s - r) / dd);
    }
    let kmin = ks.iter().copied().min().unwrap_or(0);
    let j0 = j0.unwrap_or(0);
    Ok(f.map_exponents(|e| {
        let s = e[1] as i64 - m * e[0] as i64;
        vec![e[0], ((s - j0) / dd - kmin) as u32]
    }))
}
