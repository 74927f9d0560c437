use qres::exactnum::rat;
use qres::wproj::{genus, normalize_weights, parse_curve, virtual_genus, wdegree, Weights};

fn w(a: i64, b: i64, c: i64) -> Weights {
    Weights::new(a, b, c).unwrap()
}

fn fermat(ws: Weights, d: i64) -> String {
    format!(
        "x0^{} + x1^{} + x2^{}",
        d / ws.w(0),
        d / ws.w(1),
        d / ws.w(2)
    )
}

#[test]
fn smooth_fermat_curves_have_virtual_genus() {
    let mut cases = Vec::new();
    cases.extend((1..=10).map(|d| (w(1, 1, 1), d)));
    cases.extend((2..=20).step_by(2).map(|d| (w(1, 1, 2), d)));
    cases.extend([(w(2, 3, 5), 30), (w(2, 3, 5), 60)]);
    for (ws, d) in cases {
        let f = fermat(ws, d);
        let r = genus(&parse_curve(&f).unwrap(), &ws).unwrap();
        assert_eq!(r.degree, d);
        assert!(r.points.is_empty(), "{f}: {:?}", r.points);
        assert_eq!(r.genus, virtual_genus(d, &ws), "{f}");
        assert!(r.smooth_transversal_exists);
    }
}

#[test]
fn classical_cubics_and_quartics() {
    let cases = [
        ("x1^2*x0 - x2^3", 0),
        ("x1^2*x0 - x2^2*x0 - x2^3", 0),
        ("x1^2*x0 - x2^3 - x2*x0^2", 1),
        ("(x1^2 + x2^2)^2 - x0^2*(x1^2 - x2^2)", 0),
        (
            "x1^2*x2^2 + x2^2*x0^2 + x0^2*x1^2 - 2*x0*x1*x2*(x0 + x1 + x2)",
            0,
        ),
        ("x1^4 + x2^4 - x0^2*x1*x2", 2),
        ("x0^2*x1^2 - x2^4 - x1^4", 1),
        ("(x1 - x0)^2*x0^2 - x2^4 + x1^4", 3),
    ];
    for (f, g) in cases {
        let r = genus(&parse_curve(f).unwrap(), &w(1, 1, 1)).unwrap();
        assert_eq!(r.genus, rat(g, 1), "{f}: {}", r.summary());
    }
}

#[test]
fn genus_is_invariant_under_weight_normalization() {
    let f = parse_curve("x0^5 + x1^2*x0 + x2^2").unwrap();
    let ws = w(2, 4, 5);
    let (nw, nf) = normalize_weights(ws, &f).unwrap();
    assert_eq!(
        genus(&f, &ws).unwrap().genus,
        genus(&nf, &nw).unwrap().genus
    );
    assert_eq!(wdegree(&nf, &nw).unwrap(), 5);
}

#[test]
fn genus_is_invariant_under_permutations() {
    let curves = [
        ("x0*x1*x2 + (x0^3 - x1^2)^2", [2, 3, 7]),
        ("x0*x1 - x2^2", [3, 5, 4]),
        ("x1^2*x0 - x2^2*x0 - x2^3", [1, 1, 1]),
    ];
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    for (text, ws) in curves {
        let f = parse_curve(text).unwrap();
        let base = genus(&f, &Weights(ws)).unwrap().genus;
        for p in perms {
            let h = f.map_exponents(|e| vec![e[p[0]], e[p[1]], e[p[2]]]);
            let pw = Weights([ws[p[0]], ws[p[1]], ws[p[2]]]);
            assert_eq!(genus(&h, &pw).unwrap().genus, base, "{text} {p:?}");
        }
    }
}
