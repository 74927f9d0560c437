use super::{checked_exp, SparsePoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Chart {
    /// `(x, y) -> (x^p, x^q y)`
    One,
    /// `(x, y) -> (x y^p, y^q)`
    Two,
}

/// `min(p i + q j)` over the support of a bivariate polynomial.
pub fn weighted_order(f: &SparsePoly, p: u64, q: u64) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.terms()
        .map(|(e, _)| p * e[0] as u64 + q * e[1] as u64)
        .min()
        .unwrap())
}

/// Substitutes the chart map and divides out the exceptional coordinate.
pub fn blowup_transform(f: &SparsePoly, p: u64, q: u64, chart: Chart) -> Result<(u64, SparsePoly)> {
    assert_eq!(f.nvars(), 2);
    let nu = weighted_order(f, p, q)?;
    let (p, q, nu) = (p as i64, q as i64, nu as i64);
    let strict = match chart {
        Chart::One => f.map_exponents(|e| {
            let (i, j) = (e[0] as i64, e[1] as i64);
            vec![checked_exp(p * i + q * j - nu), e[1]]
        }),
        Chart::Two => f.map_exponents(|e| {
            let (i, j) = (e[0] as i64, e[1] as i64);
            vec![e[0], checked_exp(p * i + q * j - nu)]
        }),
    };
    Ok((nu as u64, strict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn orders() {
        for (a, b) in [(1, 1), (4, 9), (7, 2)] {
            assert_eq!(weighted_order(&p("x"), a, b).unwrap(), a);
        }
        assert_eq!(weighted_order(&p("x^2 - y^3"), 3, 2).unwrap(), 6);
        assert_eq!(weighted_order(&p("x*y + (x^3 - y^2)^2"), 1, 5).unwrap(), 6);
        assert!(weighted_order(&p("0"), 1, 1).is_err());
    }

    #[test]
    fn transforms() {
        let (nu, s) = blowup_transform(&p("x^2 - y^3"), 3, 2, Chart::One).unwrap();
        assert_eq!((nu, s), (6, p("1 - y^3")));
        let (nu, s) = blowup_transform(&p("x"), 5, 3, Chart::One).unwrap();
        assert_eq!((nu, s), (5, p("1")));
        let (nu, s) = blowup_transform(&p("x^2 - y^4"), 2, 1, Chart::One).unwrap();
        assert_eq!((nu, s), (4, p("1 - y^4")));
        let (nu, s) = blowup_transform(&p("x^2 - y^3"), 3, 2, Chart::Two).unwrap();
        assert_eq!((nu, s), (6, p("x^2 - 1")));
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(((0u32..6, 0u32..6), -5i64..=5), 1..6).prop_filter_map(
            "nonzero",
            |ts| {
                let terms: Vec<(Vec<u32>, crate::exactnum::Rat)> = ts
                    .into_iter()
                    .map(|((i, j), c)| (vec![i, j], crate::exactnum::rat_int(c)))
                    .collect();
                let f = SparsePoly::from_rat_terms(&["x", "y"], &terms);
                (!f.is_zero()).then_some(f)
            },
        )
    }

    proptest! {
        #[test]
        fn order_is_additive(f in arb_poly(), g in arb_poly(), a in 1u64..8, b in 1u64..8) {
            let fg = f.mul(&g);
            prop_assert_eq!(weighted_order(&fg, a, b).unwrap(), weighted_order(&f, a, b).unwrap() + weighted_order(&g, a, b).unwrap());
        }

        #[test]
        fn chart_one_round_trip(f in arb_poly(), a in 1u64..8, b in 1u64..8) {
            prop_assume!(crate::exactnum::gcd(a as i64, b as i64) == 1);
            let (nu, s) = blowup_transform(&f, a, b, Chart::One).unwrap();
            prop_assert!(s.min_exponent(0) == 0);
            let back = s.map_exponents(|e| vec![e[0] + nu as u32, e[1]]);
            let direct = f.map_exponents(|e| vec![a as u32 * e[0] + b as u32 * e[1], e[1]]);
            prop_assert_eq!(back, direct);
        }
    }
}
