use num_traits::Zero;

use super::{dehomogenize, PointReport, Weights};
use crate::error::{Error, Result};
use crate::exactnum::{AdjoinError, ExtError, ExtField, ExtResult, Rat, Value};
use crate::invariants::delta_w;
use crate::poly::{lift_value, q_gcd, resultant, QPoly, SparsePoly};
use crate::quotsing::QuotType;
use crate::resolve::{resolve_with, ResolveOptions};

/// Conjugate singular points of one affine chart, off the vertices, all
/// sharing a coordinate field.
#[derive(Clone, Debug)]
pub struct SingularCluster {
    /// `0`: points with `x0 ≠ 0` in coordinates `(x1, x2)`; `1`: points with
    /// `x0 = 0, x1 ≠ 0` in coordinates `(x0, x2)`.
    pub chart: usize,
    pub field: ExtField,
    pub coords: (Value, Value),
    pub description: String,
}

impl SingularCluster {
    /// Number of points of the affine chart in the cluster.
    pub fn size(&self) -> usize {
        self.field.degree()
    }

    pub fn germ(&self, f: &SparsePoly) -> SparsePoly {
        let g = dehomogenize(f, self.chart).lift(&self.field);
        g.translate(0, &self.coords.0).translate(1, &self.coords.1)
    }

    /// δ^ω summed over the cluster, and its share `/ w_chart` of the genus formula.
    pub fn report(
        &self,
        f: &SparsePoly,
        w: &Weights,
        opts: &ResolveOptions,
    ) -> Result<PointReport> {
        let germ = self.germ(f);
        let tree = resolve_with(&germ, QuotType::smooth(), opts)?;
        let total = delta_w(&tree).total * Rat::from_integer(tree.root_weight().into());
        let share = &total / Rat::from_integer(w.w(self.chart).into());
        Ok(PointReport {
            point: self.description.clone(),
            chart: self.chart,
            ambient: QuotType::smooth(),
            germ: germ.to_string(),
            affine_points: self.size(),
            delta_total: total,
            delta_w: share,
        })
    }
}

fn qpoly(f: &SparsePoly, var: usize) -> QPoly {
    let mut out = vec![Rat::zero(); f.degree_in(var) as usize + 1];
    for (e, c) in f.rational_terms().expect("rational polynomial") {
        out[e[var] as usize] += c;
    }
    crate::poly::q_trim(out)
}

fn q_radical_without_zero(p: &[Rat]) -> QPoly {
    let low = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let p = crate::poly::q_trim(p[low..].to_vec());
    if p.len() <= 1 {
        return p;
    }
    let g = q_gcd(&p, &crate::poly::q_deriv(&p));
    crate::poly::q_divrem(&p, &g).0
}

fn values(p: &[Rat]) -> Vec<Value> {
    p.iter().map(|c| Value::Q(c.clone())).collect()
}

fn poly_string(field: &ExtField, var: &str, p: &[Value]) -> String {
    SparsePoly::from_dense(field, &[var], 0, p).to_string()
}

/// Runs `f` over every component of `field` that a split exposes.
fn on_components<T>(
    field: &ExtField,
    f: &mut dyn FnMut(&ExtField) -> ExtResult<Vec<T>>,
) -> Result<Vec<T>> {
    match f(field) {
        Ok(v) => Ok(v),
        Err(ExtError::Split(ev)) => {
            let (a, b) = field.split(&ev);
            let mut v = on_components(&a, f)?;
            v.extend(on_components(&b, f)?);
            Ok(v)
        }
        Err(ExtError::DivisionByZero) => Err(Error::DivisionByZero),
    }
}

/// Field generated by a root of the squarefree `m`, with that root.
fn root_field(
    k: &ExtField,
    m: &[Value],
    name: &str,
    bound: usize,
) -> ExtResult<std::result::Result<(ExtField, Value), Error>> {
    let c = k.ctx();
    let m = c.p_monic(m)?;
    if m.len() == 2 {
        return Ok(Ok((k.clone(), c.neg(&m[0]))));
    }
    let l = match k.adjoin(name, &m) {
        Ok(l) => l,
        Err(AdjoinError::Ext(e)) => return Err(e),
        Err(other) => {
            return Ok(Err(Error::InternalInconsistency(format!(
                "adjoin failed: {other:?}"
            ))))
        }
    };
    if l.degree() > bound {
        return Ok(Err(Error::ExtensionOverflow {
            degree: l.degree(),
            bound,
        }));
    }
    let g = l.generator();
    Ok(Ok((l, g)))
}

/// Points `(α, β)` with `α` a root of `ys` (over `k`, or the given value) and
/// `β` a common root of `zs(α)`, excluding `β = 0` when `skip_zero_z`.
fn clusters(
    chart: usize,
    k: &ExtField,
    alpha: &Value,
    alpha_desc: &str,
    zs: &[SparsePoly],
    skip_zero_z: bool,
    bound: usize,
) -> Result<Vec<SingularCluster>> {
    let mut err = None;
    let out = on_components(k, &mut |k| {
        let c = k.ctx();
        let a = k.project(alpha);
        let mut h: Vec<Value> = Vec::new();
        for z in zs {
            let zk = z.lift(k).eval_var(0, &a).to_dense(1);
            h = c.p_gcd(&h, &c.p_trim(zk))?;
        }
        let mut h = c.p_trim(h);
        if skip_zero_z {
            let low = h.iter().position(|v| !c.is_zero(v)).unwrap_or(0);
            h = h[low..].to_vec();
        }
        if h.len() <= 1 {
            return Ok(Vec::new());
        }
        let rad = c
            .p_squarefree(&h)?
            .into_iter()
            .fold(vec![c.one()], |acc, (p, _)| c.p_mul(&acc, &p));
        let name = format!("t{}", k.depth() + 1);
        match root_field(k, &rad, &name, bound)? {
            Ok((l, b)) => {
                let a_l = lift_value(&a, k.depth(), l.depth());
                let vars = if chart == 0 {
                    ("x1", "x2")
                } else {
                    ("x0", "x2")
                };
                let description = format!(
                    "{} = {}, {} = root of {}",
                    vars.0,
                    alpha_desc,
                    vars.1,
                    poly_string(k, "t", &rad)
                );
                Ok(vec![SingularCluster {
                    chart,
                    field: l,
                    coords: (a_l, b),
                    description,
                }])
            }
            Err(e) => {
                err = Some(e);
                Ok(Vec::new())
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn nonzero_resultant(f: &SparsePoly, g: &SparsePoly) -> Result<Option<QPoly>> {
    if f.is_zero() || g.is_zero() || g.degree_in(1) == 0 && f.degree_in(1) == 0 {
        return Ok(None);
    }
    let r = resultant(f, g, 1)?;
    Ok((!r.is_zero()).then(|| qpoly(&r, 0)))
}

/// Singular points of `{F = 0}` off the three vertices, as conjugate clusters.
/// Weights must be pairwise coprime.
pub fn singular_locus(
    f: &SparsePoly,
    w: &Weights,
    opts: &ResolveOptions,
) -> Result<Vec<SingularCluster>> {
    if !w.is_normalized() {
        return Err(Error::BadWeights(format!("{w} is not pairwise coprime")));
    }
    let q = ExtField::rational();
    let bound = opts.ext_bound;
    let mut out = Vec::new();

    // chart x0 = 1, coordinates (y, z) = (x1, x2), origin excluded
    let g = dehomogenize(f, 0);
    let parts = [g.clone(), g.derivative(0), g.derivative(1)];
    out.extend(clusters(
        0,
        &q,
        &Value::Q(Rat::zero()),
        "0",
        &parts,
        true,
        bound,
    )?);
    if g.degree_in(1) > 0 {
        let mut cand: Option<QPoly> = None;
        for (a, b) in [(0, 2), (0, 1), (1, 2)] {
            if let Some(r) = nonzero_resultant(&parts[a], &parts[b])? {
                cand = Some(match cand {
                    None => r,
                    Some(c) => q_gcd(&c, &r),
                });
            }
        }
        let cand = q_radical_without_zero(&cand.unwrap_or_default());
        if cand.len() > 1 {
            let desc = format!("root of {}", poly_string(&q, "s", &values(&cand)));
            let mut err = None;
            let fields =
                on_components(
                    &q,
                    &mut |k| match root_field(k, &values(&cand), "s1", bound)? {
                        Ok(x) => Ok(vec![x]),
                        Err(e) => {
                            err = Some(e);
                            Ok(Vec::new())
                        }
                    },
                )?;
            if let Some(e) = err {
                return Err(e);
            }
            for (k, alpha) in fields {
                out.extend(clusters(0, &k, &alpha, &desc, &parts, false, bound)?);
            }
        }
    }

    // chart x1 = 1 on the line x0 = 0, coordinate z = x2 ≠ 0
    let g1 = dehomogenize(f, 1);
    let parts1 = [g1.clone(), g1.derivative(0), g1.derivative(1)];
    out.extend(clusters(
        1,
        &q,
        &Value::Q(Rat::zero()),
        "0",
        &parts1,
        true,
        bound,
    )?);
    Ok(out)
}
