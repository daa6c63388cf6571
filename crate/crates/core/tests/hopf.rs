use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unipotent::hopf::*;
use unipotent::witt::NilpotentPolyRing;
use unipotent::Error;

fn presets(p: u64) -> Vec<FiniteHopfAlgebra> {
    let mut v = vec![alpha(p, 1, 1).unwrap(), alpha(p, 2, 1).unwrap(), mu_p(p, 1).unwrap(), constant_zp(p, 1).unwrap()];
    for r in 1..=3 {
        if p.pow(r as u32) <= 32 {
            v.push(witt_frobenius_kernel(p, r, 1).unwrap());
        }
    }
    v
}

#[test]
fn presets_pass_axioms() {
    for p in [2, 3, 5] {
        for h in presets(p) {
            let rep = h.check_axioms();
            assert!(rep.pass(), "{} p={p}: {:?}", h.name, rep.first_failure);
            assert!(rep.commutative && rep.cocommutative, "{}", h.name);
        }
    }
    assert!(alpha(2, 1, 2).unwrap().check_axioms().pass());
}

#[test]
fn alpha_p_primitives() {
    let h = alpha(2, 1, 1).unwrap();
    assert_eq!(h.dim(), 2);
    assert_eq!(h.primitives(), vec![h.basis_vec(1)]);
    let h = alpha(3, 2, 1).unwrap();
    // x and x^3 are primitive in k[x]/x^9
    assert_eq!(h.primitives().len(), 2);
}

#[test]
fn witt_kernel_comultiplication() {
    let h = witt_frobenius_kernel(2, 2, 1).unwrap();
    assert_eq!(h.dim(), 4);
    let ring = NilpotentPolyRing::uniform(2, &["x0", "x1"], 2).unwrap();
    let one = ring.index(&[0, 0]).unwrap();
    let x0 = ring.index(&[1, 0]).unwrap();
    let x1 = ring.index(&[0, 1]).unwrap();
    let d = &h.comult[x1];
    for j in 0..4 {
        for k in 0..4 {
            let want = (j == x1 && k == one) || (j == one && k == x1) || (j == x0 && k == x0);
            assert_eq!(d[j][k], vec![u64::from(want)], "({j},{k})");
        }
    }
    // only x0 is primitive
    assert_eq!(h.primitives(), vec![h.basis_vec(x0)]);
}

#[test]
fn mu_group_likes() {
    let h = mu_p(3, 1).unwrap();
    let g = h.group_likes().unwrap();
    let want: Vec<_> = (0..3).map(|i| h.basis_vec(i)).collect();
    let mut want = want;
    want.sort();
    assert_eq!(g, want);
    assert!(h.primitives().is_empty());
    let a = alpha(3, 1, 1).unwrap();
    assert_eq!(a.group_likes().unwrap(), vec![a.basis_vec(0)]);
}

#[test]
fn cartier_duality() {
    for p in [2, 3, 5] {
        let a = alpha(p, 1, 1).unwrap();
        let da = cartier_dual(&a).unwrap();
        let iso = find_hopf_iso(&a, &da).unwrap().expect("alpha_p is self-dual");
        assert!(is_hopf_iso(&a, &da, &iso));

        let z = constant_zp(p, 1).unwrap();
        let dz = cartier_dual(&z).unwrap();
        let mu = mu_p(p, 1).unwrap();
        let iso = find_hopf_iso(&dz, &mu).unwrap().expect("dual of Z/p is mu_p");
        assert!(is_hopf_iso(&dz, &mu, &iso));
        assert!(find_hopf_iso(&a, &mu).unwrap().is_none());
        assert!(find_hopf_iso(&z, &mu).unwrap().is_none());

        for h in presets(p) {
            let dd = cartier_dual(&cartier_dual(&h).unwrap()).unwrap();
            assert_eq!(dd.mult, h.mult);
            assert_eq!(dd.comult, h.comult);
            assert_eq!(dd.unit, h.unit);
            assert_eq!(dd.counit, h.counit);
            assert_eq!(dd.antipode, h.antipode);
        }
    }
}

#[test]
fn witt_kernel_dual_is_not_self_dual_at_level_two() {
    // W_2[F] has one-dimensional primitives while its dual k[t]/t^{p^2} has two
    for p in [2, 3] {
        let h = witt_frobenius_kernel(p, 2, 1).unwrap();
        let d = cartier_dual(&h).unwrap();
        assert_eq!(h.primitives().len(), 1);
        assert_eq!(d.primitives().len(), 2);
        assert!(find_hopf_iso(&h, &d).unwrap().is_none());
        let a = alpha(p, 2, 1).unwrap();
        assert!(find_hopf_iso(&d, &a).unwrap().is_some());
    }
}

#[test]
fn primitive_pairing_rank() {
    // Prim(H) pairs with m/m^2 of the dual: both dimensions agree
    for p in [2, 3] {
        for h in presets(p) {
            if h.name == "mu_p" {
                continue;
            }
            let a = dual_algebra(&h).unwrap();
            assert_eq!(a.summary().cotangent_dim, h.primitives().len(), "{}", h.name);
        }
    }
}

#[test]
fn dual_local_algebra() {
    let a = dual_algebra(&alpha(3, 1, 1).unwrap()).unwrap();
    assert_eq!(a.summary().ideal_dims, vec![2, 1, 0]);
    let h = tensor_product(&alpha(2, 1, 1).unwrap(), &alpha(2, 1, 1).unwrap()).unwrap();
    let s = dual_algebra(&h).unwrap().summary();
    assert_eq!(s.cotangent_dim, 2);
    assert_eq!(s.graded_dims, vec![2, 1]);
    let w = dual_algebra(&witt_frobenius_kernel(2, 2, 1).unwrap()).unwrap().summary();
    assert_eq!(w.graded_dims, vec![1, 1, 1]);
    assert!(matches!(dual_algebra(&mu_p(3, 1).unwrap()), Err(Error::InvalidInput(_))));
}

#[test]
fn filtration_is_multiplicative() {
    let h = witt_frobenius_kernel(3, 2, 1).unwrap();
    let a = dual_algebra(&h).unwrap();
    let f = &a.filtration;
    for i in 0..f.len() {
        for j in 0..f.len() {
            let prod = a.product(&f[i], &f[j]);
            let k = (i + j + 1).min(f.len() - 1);
            let mut joined = f[k].clone();
            let before = joined.len();
            joined.extend(prod);
            let span = unipotent::linalg::span_basis(&*a.field, &joined);
            assert_eq!(span.len(), before);
        }
    }
}

#[test]
fn unsupported_and_caps() {
    assert!(matches!(make_group_scheme("W_r", 2, 2, 1), Err(Error::Unsupported(_))));
    assert!(matches!(make_group_scheme("G_m", 2, 2, 1), Err(Error::InvalidInput(_))));
    assert!(matches!(alpha(2, 6, 1), Err(Error::CapExceeded(_))));
    assert!(make_group_scheme("W_2[F]", 3, 0, 1).is_ok());
    assert!(make_group_scheme("alpha_p^2", 2, 0, 1).unwrap().dim() == 4);
}

#[test]
fn hopf_json_roundtrip() {
    let h = witt_frobenius_kernel(2, 2, 2).unwrap();
    let s = serde_json::to_string(&h.to_json()).unwrap();
    let back = FiniteHopfAlgebra::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(back.comult, h.comult);
    let mut bad = h.to_json();
    bad.comult[1][0][1] = vec![0, 0];
    assert!(FiniteHopfAlgebra::from_json(&bad).is_err());
}

#[test]
fn fgl_basic_laws() {
    let a = CommFgl::additive(2, 8).unwrap();
    let m = CommFgl::multiplicative(2, 8).unwrap();
    assert!(a.check().pass());
    assert!(m.check().pass());
    let mut want = vec![0; 9];
    want[2] = 1;
    assert_eq!(m.p_series(2), want);
    assert_eq!(m.height().unwrap(), Height::Exact(1));
    assert_eq!(a.height().unwrap(), Height::AtLeast(3));
    assert_eq!(CommFgl::additive(3, 12).unwrap().height().unwrap(), Height::AtLeast(2));
    assert_eq!(CommFgl::multiplicative(3, 12).unwrap().height().unwrap(), Height::Exact(1));
}

#[test]
fn fgl_failures_are_located() {
    let mut c = vec![vec![0; 7]; 7];
    c[1][0] = 1;
    c[0][1] = 1;
    c[2][1] = 1;
    c[1][2] = 1;
    let f = CommFgl::new(3, 6, c).unwrap();
    let rep = f.check();
    assert!(!rep.associative);
    assert_eq!(rep.first_failure.as_ref().unwrap().1, 5);
    let mut c = vec![vec![0; 5]; 5];
    c[1][0] = 1;
    c[0][1] = 1;
    c[2][0] = 1;
    let rep = CommFgl::new(2, 4, c).unwrap().check();
    assert!(!rep.right_unit || !rep.left_unit);
    assert_eq!(rep.first_failure.unwrap().1, 2);
    assert!(matches!(CommFgl::additive(2, 40), Err(Error::CapExceeded(_))));
}

#[test]
fn lubin_tate_laws() {
    // f = 2x + x^2 is the 2-series endomorphism of x + y + xy
    let f = lubin_tate(2, 1, 6, 3).unwrap();
    assert_eq!(f, CommFgl::multiplicative(8, 6).unwrap());
    let f2 = lubin_tate(2, 2, 6, 1).unwrap();
    assert!(f2.check().pass());
    let mut x4 = vec![0; 7];
    x4[4] = 1;
    assert_eq!(f2.p_series(2), x4);
    for p in [2u64, 3] {
        for h in 1..=3u32 {
            let d = (p.pow(h) as usize + 1).max(4);
            let g = lubin_tate(p, h, d, 2).unwrap();
            assert!(g.check().pass(), "p={p} h={h}");
            let red = g.reduce(p).unwrap();
            assert!(red.check().pass());
            assert_eq!(red.height().unwrap(), Height::Exact(h), "p={p} h={h}");
        }
    }
    assert_eq!(lubin_tate(3, 2, 12, 2).unwrap(), lubin_tate(3, 2, 12, 2).unwrap());
}

#[test]
fn lubin_tate_truncation_is_compatible() {
    let big = lubin_tate(3, 2, 14, 2).unwrap();
    let small = lubin_tate(3, 2, 9, 2).unwrap();
    for i in 0..=9 {
        for j in 0..=9 - i {
            assert_eq!(big.c[i][j], small.c[i][j]);
        }
    }
}

#[test]
fn heights_survive_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let laws = [
        CommFgl::multiplicative(2, 12).unwrap(),
        CommFgl::additive(3, 12).unwrap(),
        lubin_tate(2, 2, 12, 1).unwrap(),
        lubin_tate(3, 2, 12, 1).unwrap(),
    ];
    for f in &laws {
        let h = f.height().unwrap();
        let p = f.modulus();
        for _ in 0..20 {
            let mut phi = vec![0u64; f.d + 1];
            phi[1] = 1;
            for c in phi.iter_mut().skip(2) {
                *c = rng.gen_range(0..p);
            }
            let g = f.coordinate_change(&phi).unwrap();
            assert!(g.check().pass());
            assert_eq!(g.height().unwrap(), h);
        }
    }
}

#[test]
fn fgl_json_roundtrip() {
    let f = lubin_tate(2, 2, 8, 1).unwrap();
    let j = serde_json::to_string(&f.to_json()).unwrap();
    assert!(j.contains("\"D\":8"));
    let back = CommFgl::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, f);
}

#[test]
fn nc_multiplicative_law() {
    for g in 1..=3 {
        let f = NcFgl::multiplicative(g, 6, 2).unwrap();
        let rep = f.check();
        assert!(rep.pass(), "g={g}: {:?}", rep.first_failure);
    }
    assert!(NcFgl::multiplicative(2, 6, 3).unwrap().check().pass());
    assert!(matches!(NcFgl::multiplicative(4, 6, 2), Err(Error::CapExceeded(_))));
}

#[test]
fn nc_law_with_cross_term_fails_associativity() {
    // F_0 = X_0 + Y_0 + X_1 Y_0 is not associative
    let mut c0 = BTreeMap::new();
    c0.insert((vec![0], vec![]), 1);
    c0.insert((vec![], vec![0]), 1);
    c0.insert((vec![1], vec![0]), 1);
    c0.insert((vec![0], vec![1]), 1);
    let mut c1 = BTreeMap::new();
    c1.insert((vec![1], vec![]), 1);
    c1.insert((vec![], vec![1]), 1);
    let f = NcFgl::new(2, 4, 2, vec![c0, c1]).unwrap();
    let rep = f.check();
    assert!(rep.left_unit && rep.right_unit && rep.symmetric);
    assert!(!rep.associative);
}

#[test]
fn dual_levels() {
    for p in [2u64, 3] {
        let a = fgl_dual_level(&CommFgl::additive(p, 2 * p as usize).unwrap(), 1).unwrap();
        assert!(find_hopf_iso(&a, &alpha(p, 1, 1).unwrap()).unwrap().is_some());
        let m = fgl_dual_level(&CommFgl::multiplicative(p, 2 * p as usize).unwrap(), 1).unwrap();
        assert!(find_hopf_iso(&m, &mu_p(p, 1).unwrap()).unwrap().is_some());
        let lt = fgl_dual_level(&lubin_tate(p, 2, 2 * p as usize, 1).unwrap(), 1).unwrap();
        assert_eq!(lt.dim(), p as usize);
        assert_eq!(lt.primitives().len(), 1);
        let s = dual_algebra(&cartier_dual(&lt).unwrap()).unwrap().summary();
        assert_eq!(s.graded_dims, vec![1; p as usize - 1]);
    }
    let lvl = fgl_dual_level(&lubin_tate(2, 2, 8, 1).unwrap(), 2).unwrap();
    assert_eq!(lvl.dim(), 4);
    let a = dual_algebra(&lvl).unwrap().summary();
    assert_eq!(a.graded_dims, vec![1, 1, 1]);
    assert!(matches!(fgl_dual_level(&CommFgl::additive(2, 3).unwrap(), 2), Err(Error::InvalidInput(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn coordinate_change_preserves_axioms(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = CommFgl::multiplicative(p, 8).unwrap();
        let mut phi = vec![0u64; 9];
        phi[1] = 1;
        for c in phi.iter_mut().skip(2) {
            *c = rng.gen_range(0..p);
        }
        let g = f.coordinate_change(&phi).unwrap();
        prop_assert!(g.check().pass());
        let psi = f.series_inverse(&phi).unwrap();
        let back = g.coordinate_change(&psi).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn tensor_products_are_hopf(a in 0usize..3, b in 0usize..3) {
        let hs = [alpha(2, 1, 1).unwrap(), mu_p(2, 1).unwrap(), constant_zp(2, 1).unwrap()];
        let t = tensor_product(&hs[a], &hs[b]).unwrap();
        prop_assert!(t.check_axioms().pass());
        prop_assert_eq!(t.dim(), 4);
    }
}
