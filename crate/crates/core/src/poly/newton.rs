use serde::Serialize;

use super::{weighted_order, SparsePoly};
use crate::error::{Error, Result};
use crate::exactnum::gcd;

/// A compact edge of the Newton polygon with primitive inner normal `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub normal: (u64, u64),
    /// Weighted order `p i + q j` attained along the face.
    pub nu: u64,
    /// Endpoint with the larger `y` exponent.
    pub start: (u32, u32),
    pub end: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Vertices of the compact part, by increasing `x` exponent.
    pub vertices: Vec<(u32, u32)>,
    pub faces: Vec<Face>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Compact faces of the Newton polygon of a bivariate polynomial.
pub fn newton_polygon(f: &SparsePoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pts: Vec<(i64, i64)> = f.terms().map(|(e, _)| (e[0] as i64, e[1] as i64)).collect();
    pts.sort();
    let imin = pts[0].0;
    let jmin = pts.iter().map(|p| p.1).min().unwrap();
    let first = *pts
        .iter()
        .filter(|p| p.0 == imin)
        .min_by_key(|p| p.1)
        .unwrap();
    let last = *pts
        .iter()
        .filter(|p| p.1 == jmin)
        .min_by_key(|p| p.0)
        .unwrap();
    if first == last {
        return Err(Error::Degenerate(
            "Newton polygon has a single vertex".into(),
        ));
    }
    // lower hull of the points between the two extreme vertices
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().filter(|p| p.0 >= first.0 && p.0 <= last.0) {
        if (p.0 == first.0 && p != first) || (p.0 == last.0 && p != last) {
            continue;
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut faces = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (di, dj) = (b.0 - a.0, a.1 - b.1);
        let g = gcd(di, dj);
        let (p, q) = ((dj / g) as u64, (di / g) as u64);
        faces.push(Face {
            normal: (p, q),
            nu: p * a.0 as u64 + q * a.1 as u64,
            start: (a.0 as u32, a.1 as u32),
            end: (b.0 as u32, b.1 as u32),
        });
    }
    Ok(NewtonPolygon {
        vertices: hull.iter().map(|&(i, j)| (i as u32, j as u32)).collect(),
        faces,
    })
}

/// The initial part along the face with normal `(p, q)`, as a polynomial in
/// `t` where `y^p = t x^q`.
pub fn face_poly(f: &SparsePoly, normal: (u64, u64)) -> Result<SparsePoly> {
    let (p, q) = normal;
    let nu = weighted_order(f, p, q)?;
    let on: Vec<(&[u32], _)> = f
        .terms()
        .filter(|(e, _)| p * e[0] as u64 + q * e[1] as u64 == nu)
        .collect();
    let jmin = on.iter().map(|(e, _)| e[1]).min().unwrap();
    let mut out = SparsePoly::zero(f.field(), &["t"]);
    for (e, c) in on {
        out.add_term(vec![((e[1] - jmin) as u64 / p) as u32], c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }
    fn t(s: &str) -> SparsePoly {
        parse_poly(s, &["t"]).unwrap()
    }

    #[test]
    fn single_face() {
        let np = newton_polygon(&p("x^2 - y^3")).unwrap();
        assert_eq!(np.faces.len(), 1);
        assert_eq!(np.faces[0].normal, (3, 2));
        assert_eq!(np.faces[0].nu, 6);
    }

    #[test]
    fn two_faces() {
        // support {(1,1),(6,0),(3,2),(0,4)}
        let np = newton_polygon(&p("x*y + (x^3 - y^2)^2")).unwrap();
        assert_eq!(np.vertices, vec![(0, 4), (1, 1), (6, 0)]);
        let normals: Vec<_> = np.faces.iter().map(|f| f.normal).collect();
        assert_eq!(normals, vec![(3, 1), (1, 5)]);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(
            newton_polygon(&p("x^2")),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            newton_polygon(&p("x^2 + x^3*y")),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn face_polys() {
        assert_eq!(face_poly(&p("x^2 - y^3"), (3, 2)).unwrap(), t("1 - t"));
        assert_eq!(face_poly(&p("x^2 - y^4"), (2, 1)).unwrap(), t("1 - t^2"));
        assert_eq!(
            face_poly(&p("(y - x^2)^2"), (1, 2)).unwrap(),
            t("(1 - t)^2")
        );
    }

    proptest! {
        #[test]
        fn normals_attain_order_twice(ts in prop::collection::vec(((0u32..7, 0u32..7), 1i64..4), 2..7)) {
            let terms: Vec<_> = ts.into_iter().map(|((i, j), c)| (vec![i, j], crate::exactnum::rat_int(c))).collect();
            let f = SparsePoly::from_rat_terms(&["x", "y"], &terms);
            if let Ok(np) = newton_polygon(&f) {
                for face in &np.faces {
                    let (a, b) = face.normal;
                    let nu = weighted_order(&f, a, b).unwrap();
                    prop_assert_eq!(nu, face.nu);
                    let hits = f.terms().filter(|(e, _)| a * e[0] as u64 + b * e[1] as u64 == nu).count();
                    prop_assert!(hits >= 2);
                }
                // every vertex lies on or above every face line
                for face in &np.faces {
                    let (a, b) = face.normal;
                    for (e, _) in f.terms() {
                        if (e[0] as u64) >= face.start.0 as u64 && (e[0] as u64) <= face.end.0 as u64 {
                            prop_assert!(a * e[0] as u64 + b * e[1] as u64 >= face.nu);
                        }
                    }
                }
            }
        }
    }
}
