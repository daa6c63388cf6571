use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unipotent::hopf::{alpha, constant_zp, fgl_dual_level, lubin_tate, mu_p, witt_frobenius_kernel};
use unipotent::tensorops::*;

#[test]
fn alpha_form_table() {
    for (p, want) in [(2, (1, 1, 1)), (3, (1, 0, 0)), (5, (1, 0, 0))] {
        let a = alpha(p, 1, 1).unwrap();
        let d = form_dims(&a, &a).unwrap();
        assert_eq!((d.bilinear, d.alternating.unwrap(), d.weak_alternating.unwrap()), want, "p={p}");
    }
}

#[test]
fn lubin_tate_level_duals_match_alpha_rows() {
    for p in [2u64, 3, 5] {
        let h = fgl_dual_level(&lubin_tate(p, 2, 2 * p as usize, 1).unwrap(), 1).unwrap();
        let d = form_dims(&h, &h).unwrap();
        let a = alpha(p, 1, 1).unwrap();
        let da = form_dims(&a, &a).unwrap();
        assert_eq!((d.bilinear, d.alternating, d.weak_alternating), (da.bilinear, da.alternating, da.weak_alternating));
    }
}

#[test]
fn mixed_bilinear_spaces() {
    for p in [2, 3] {
        let a = alpha(p, 1, 1).unwrap();
        let a2 = alpha(p, 2, 1).unwrap();
        let s = bilinear_space(&a, &a2).unwrap();
        assert_eq!(s.dim(), 2);
        // x⊗y and x⊗y^p
        let mut xy = vec![vec![vec![0u64]; a2.dim()]; a.dim()];
        xy[1][1] = vec![1];
        let mut xyp = vec![vec![vec![0u64]; a2.dim()]; a.dim()];
        xyp[1][p as usize] = vec![1];
        assert!(s.contains(&xy) && s.contains(&xyp));
        let z = constant_zp(p, 1).unwrap();
        assert_eq!(bilinear_space(&z, &a).unwrap().dim(), 1);
        let m = mu_p(p, 1).unwrap();
        assert_eq!(bilinear_space(&m, &a).unwrap().dim(), 0);
        let d = form_dims(&z, &z).unwrap();
        assert_eq!(d.bilinear, 1);
        assert!(s.alternating(&a).is_err());
    }
}

#[test]
fn direct_solver_agrees() {
    for p in [2, 3] {
        let hs = [alpha(p, 1, 1).unwrap(), alpha(p, 2, 1).unwrap(), constant_zp(p, 1).unwrap(), mu_p(p, 1).unwrap(), witt_frobenius_kernel(p, 2, 1).unwrap()];
        for g in &hs {
            for h in &hs {
                if g.dim() * h.dim() > 81 {
                    continue;
                }
                let fast = bilinear_space(g, h).unwrap();
                let slow = bilinear_space_direct(g, h).unwrap();
                assert_eq!(fast.dim(), slow.dim(), "{} x {}", g.name, h.name);
                assert!(slow.basis.iter().all(|b| fast.contains(b)));
                assert!(slow.basis.iter().all(|b| biadditivity_residual(g, h, b)));
                assert_eq!(fast.dim(), bilinear_space(h, g).unwrap().dim());
            }
        }
    }
}

#[test]
fn subspace_chain() {
    for p in [2, 3] {
        for h in [alpha(p, 1, 1).unwrap(), alpha(p, 2, 1).unwrap(), witt_frobenius_kernel(p, 2, 1).unwrap(), constant_zp(p, 1).unwrap()] {
            let s = bilinear_space(&h, &h).unwrap();
            let alt = s.alternating(&h).unwrap();
            let weak = s.weak_alternating().unwrap();
            assert!(weak.iter().all(|t| s.contains(t)));
            assert!(alt.iter().all(|t| s.contains(t)));
            for b in &s.basis {
                assert_eq!(&swap(&swap(b)), b);
                assert!(s.contains(&swap(b)));
            }
            if p == 2 {
                let ws = BilinearFormSpace { basis: weak.clone(), ..s.clone() };
                assert!(alt.iter().all(|t| ws.contains(t)), "{}", h.name);
            }
        }
    }
}

#[test]
fn wf_identifications() {
    for (p, r) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 1), (3, 1)] {
        let rep = wf_identification(p, r).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!((rep.characters_dim, rep.bilinear_dim, rep.pairing_rank), (1, 1, 1));
    }
    assert!(wf_identification(2, 4).is_err());
}

#[test]
fn weak_wedges() {
    let z = FgAbelianGroup::new(&[0]);
    assert_eq!(weak_wedge_abelian(&z).factors, vec![2]);
    assert_eq!(weak_wedge_abelian(&FgAbelianGroup::new(&[3])).factors, Vec::<u64>::new());
    assert_eq!(weak_wedge_abelian(&FgAbelianGroup::new(&[0, 0])).factors, vec![2, 2, 0]);
    assert_eq!(weak_wedge_abelian(&FgAbelianGroup::new(&[2])).factors, vec![2]);
    assert_eq!(weak_wedge_abelian(&FgAbelianGroup::new(&[4])).factors, vec![2]);
    assert_eq!(weak_wedge_abelian(&FgAbelianGroup::new(&[2, 4])).factors, vec![2, 2, 2]);
    let w = whitehead_symmetrization(&z);
    assert_eq!(w.matrix, vec![vec![2]]);
    assert!(w.agrees);
    let w = whitehead_symmetrization(&FgAbelianGroup::new(&[2]));
    assert_eq!(w.cokernel.factors, vec![2]);
    assert_eq!(format!("{}", weak_wedge_abelian(&FgAbelianGroup::new(&[0, 0]))), "Z/2 + Z/2 + Z");
}

#[test]
fn invariant_factor_normalization() {
    assert_eq!(FgAbelianGroup::new(&[2, 3]).factors, vec![6]);
    assert_eq!(FgAbelianGroup::new(&[4, 6]).factors, vec![2, 12]);
    assert_eq!(FgAbelianGroup::new(&[0, 2]).factors, vec![2, 0]);
    assert_eq!(FgAbelianGroup::new(&[1, 1]).factors, Vec::<u64>::new());
    assert_eq!(smith_diagonal(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
}

#[test]
fn whitehead_cross_check_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let orders: Vec<u64> = (0..n).map(|_| [0, 2, 3, 4, 6, 8, 9, 12][rng.gen_range(0..8)]).collect();
        let a = FgAbelianGroup::new(&orders);
        let w = whitehead_symmetrization(&a);
        assert!(w.agrees, "{orders:?}: {:?} vs {:?}", w.cokernel, w.cross_check);
    }
}

proptest! {
    #[test]
    fn weak_wedge_free_rank(n in 0usize..4) {
        // (Z^n) ⋏ (Z^n): n copies of Z/2 and C(n,2) copies of Z
        let a = FgAbelianGroup::new(&vec![0; n]);
        let w = weak_wedge_abelian(&a);
        prop_assert_eq!(w.rank(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(w.factors.iter().filter(|&&d| d == 2).count(), n);
    }

    #[test]
    fn smith_diagonal_divides(entries in prop::collection::vec(-9i128..10, 9)) {
        let m: Vec<Vec<i128>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let d = smith_diagonal(&m);
        for w in d.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // the determinant is preserved up to sign
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        let prod: i128 = if d.len() == 3 { d.iter().product() } else { 0 };
        prop_assert_eq!(det.abs(), prod);
    }
}
