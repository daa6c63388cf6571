use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unipotent::fields::GF;
use unipotent::ring::{BigZmod, Field, PrimeField, Ring};
use unipotent::witt::vector::oracle;
use unipotent::witt::{verify_wf_ring_identity, GaloisRing, NilpotentPolyRing, WittRing};

#[test]
fn one_plus_one_in_w2_f2() {
    let w = WittRing::new(PrimeField::new(2).unwrap(), 2, 2).unwrap();
    let a = w.vector(vec![1, 0]).unwrap();
    assert_eq!(w.add(&a, &a).unwrap().components, vec![0, 1]);
    assert_eq!(oracle::add_fp(2, &[1, 0], &[1, 0]), vec![0, 1]);
    let t = w.teichmuller(&1);
    assert_eq!(w.add(&t, &t).unwrap().components, vec![0, 1]);
}

#[test]
fn three_ones_in_w2_f3() {
    let w = WittRing::new(PrimeField::new(3).unwrap(), 3, 2).unwrap();
    let a = w.one();
    let s = w.add(&w.add(&a, &a).unwrap(), &a).unwrap();
    // 3 = V(F(1)) = V(1)
    assert_eq!(s.components, vec![0, 1]);
    let o = oracle::add_fp(3, &oracle::add_fp(3, &[1, 0], &[1, 0]), &[1, 0]);
    assert_eq!(o, vec![0, 1]);
    assert_eq!(w.scalar(3, &a).unwrap(), w.verschiebung(&a).unwrap());
}

#[test]
fn annihilation_by_zero() {
    let f = GF::new(3, 2).unwrap();
    let w = WittRing::new(f.clone(), 3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = w.vector((0..3).map(|_| f.random(&mut rng)).collect()).unwrap();
    assert!(w.is_zero(&w.mul(&a, &w.zero()).unwrap()));
}

#[test]
fn fp_arithmetic_matches_ghost_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, r) in [(2u64, 3usize), (3, 3), (5, 3)] {
        let w = WittRing::new(PrimeField::new(p).unwrap(), p, r).unwrap();
        for _ in 0..40 {
            let a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
            let b: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
            let va = w.vector(a.clone()).unwrap();
            let vb = w.vector(b.clone()).unwrap();
            assert_eq!(w.add(&va, &vb).unwrap().components, oracle::add_fp(p, &a, &b));
            assert_eq!(w.mul(&va, &vb).unwrap().components, oracle::mul_fp(p, &a, &b));
        }
    }
}

#[test]
fn ghost_is_a_ring_map_over_integer_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, r) in [(2u64, 3usize), (3, 2), (5, 2)] {
        let n = BigInt::from(p).pow(r as u32 + 2);
        let base = BigZmod::new(n.clone());
        let w = WittRing::new(base.clone(), p, r).unwrap();
        for _ in 0..30 {
            let a = w.vector((0..r).map(|_| BigInt::from(rng.gen_range(0..10_000u64))).collect()).unwrap();
            let b = w.vector((0..r).map(|_| BigInt::from(rng.gen_range(0..10_000u64))).collect()).unwrap();
            let (ga, gb) = (w.ghost(&a), w.ghost(&b));
            let gs = w.ghost(&w.add(&a, &b).unwrap());
            let gp = w.ghost(&w.mul(&a, &b).unwrap());
            for i in 0..r {
                assert_eq!(gs[i], base.add(&ga[i], &gb[i]));
                assert_eq!(gp[i], base.mul(&ga[i], &gb[i]));
            }
        }
    }
}

#[test]
fn frobenius_verschiebung_is_p() {
    let f = GF::new(2, 2).unwrap();
    let w = WittRing::new(f.clone(), 2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a = w.vector((0..3).map(|_| f.random(&mut rng)).collect()).unwrap();
        let pa = w.scalar(2, &a).unwrap();
        assert_eq!(w.verschiebung(&w.frobenius(&a).unwrap()).unwrap(), pa);
        assert_eq!(w.frobenius(&w.verschiebung(&a).unwrap()).unwrap(), pa);
    }
}

#[test]
fn teichmuller_basics() {
    let f = GF::new(3, 2).unwrap();
    let w = WittRing::new(f.clone(), 3, 2).unwrap();
    assert!(w.is_zero(&w.teichmuller(&f.zero())));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (x, y) = (f.random(&mut rng), f.random(&mut rng));
        let lhs = w.mul(&w.teichmuller(&x), &w.teichmuller(&y)).unwrap();
        assert_eq!(lhs, w.teichmuller(&f.mul(&x, &y)));
        assert_eq!(w.frobenius(&w.teichmuller(&x)).unwrap(), w.teichmuller(&f.pow(&x, 3)));
    }
}

#[test]
fn frobenius_kills_nilpotent_teichmuller() {
    let ring = NilpotentPolyRing::uniform(3, &["x"], 3).unwrap();
    let w = WittRing::new(ring.clone(), 3, 2).unwrap();
    assert!(w.is_zero(&w.frobenius(&w.teichmuller(&ring.var(0))).unwrap()));
}

#[test]
fn compute098_identity() {
    for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2)] {
        let rep = verify_wf_ring_identity(p, r).unwrap();
        assert!(rep.pass, "p={p} r={r}: {:?}", rep.product);
        assert!(!rep.n_is_zero, "n should be nonzero for p={p} r={r}");
    }
}

#[test]
fn galois_ring_matches_witt_components() {
    let f = Arc::new(GF::new(2, 3).unwrap());
    let gr = GaloisRing::new(f.clone(), 3).unwrap();
    let w = WittRing::new((*f).clone(), 2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let a = w.vector((0..3).map(|_| f.random(&mut rng)).collect()).unwrap();
        let b = w.vector((0..3).map(|_| f.random(&mut rng)).collect()).unwrap();
        let ga = gr.from_witt(&a.components).unwrap();
        let gb = gr.from_witt(&b.components).unwrap();
        assert_eq!(gr.to_witt(&ga).unwrap(), a.components);
        assert_eq!(gr.from_witt(&w.add(&a, &b).unwrap().components).unwrap(), gr.add(&ga, &gb));
        assert_eq!(gr.from_witt(&w.mul(&a, &b).unwrap().components).unwrap(), gr.mul(&ga, &gb));
        // σ on GR is the Witt Frobenius
        assert_eq!(gr.from_witt(&w.frobenius(&a).unwrap().components).unwrap(), gr.sigma(&ga));
    }
}

#[test]
fn sigma_fixes_integers() {
    let gr = GaloisRing::new(Arc::new(GF::new(3, 3).unwrap()), 2).unwrap();
    for k in 0..9 {
        let x = gr.from_i64(k);
        assert_eq!(gr.sigma(&x), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn witt_add_assoc_comm_over_f9(seed in any::<u64>()) {
        let f = GF::new(3, 2).unwrap();
        let w = WittRing::new(f.clone(), 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = || w.vector((0..2).map(|_| f.random(&mut rng)).collect()).unwrap();
        let (a, b, c) = (v(), v(), v());
        prop_assert_eq!(w.add(&a, &b).unwrap(), w.add(&b, &a).unwrap());
        prop_assert_eq!(w.add(&w.add(&a, &b).unwrap(), &c).unwrap(), w.add(&a, &w.add(&b, &c).unwrap()).unwrap());
        prop_assert!(w.is_zero(&w.sub(&a, &a).unwrap()));
    }

    #[test]
    fn witt_add_assoc_over_nilpotent(seed in any::<u64>()) {
        let ring = NilpotentPolyRing::uniform(2, &["x", "y"], 2).unwrap();
        let w = WittRing::new(ring.clone(), 2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = || w.vector((0..2).map(|_| (0..ring.dim()).map(|_| rng.gen_range(0..2)).collect()).collect()).unwrap();
        let (a, b, c) = (v(), v(), v());
        prop_assert_eq!(w.add(&a, &b).unwrap(), w.add(&b, &a).unwrap());
        prop_assert_eq!(w.add(&w.add(&a, &b).unwrap(), &c).unwrap(), w.add(&a, &w.add(&b, &c).unwrap()).unwrap());
    }

    #[test]
    fn fv_is_p(seed in any::<u64>()) {
        let f = GF::new(3, 2).unwrap();
        let w = WittRing::new(f.clone(), 3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = w.vector((0..3).map(|_| f.random(&mut rng)).collect()).unwrap();
        let pa = w.scalar(3, &a).unwrap();
        prop_assert_eq!(w.verschiebung(&w.frobenius(&a).unwrap()).unwrap(), pa.clone());
        prop_assert_eq!(w.frobenius(&w.verschiebung(&a).unwrap()).unwrap(), pa);
    }

    #[test]
    fn frobenius_is_ring_hom(seed in any::<u64>()) {
        let f = GF::new(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.frobenius(&f.add(&x, &y), 1), f.add(&f.frobenius(&x, 1), &f.frobenius(&y, 1)));
        prop_assert_eq!(f.frobenius(&f.mul(&x, &y), 1), f.mul(&f.frobenius(&x, 1), &f.frobenius(&y, 1)));
        prop_assert_eq!(f.frobenius(&x, 3), x);
    }
}
