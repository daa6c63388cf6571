use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unipotent::fields::{FieldTower, Predicate, GF};
use unipotent::poly;
use unipotent::ring::{Field, Ring};

#[test]
fn lcm_level() {
    let t = FieldTower::new(3).unwrap();
    t.extend_until(Predicate::ContainsSubfield(3)).unwrap();
    let l = t.extend_until(Predicate::ContainsSubfield(4)).unwrap();
    assert_eq!(t.degree(l), 12);
}

#[test]
fn cube_root_of_unity_level() {
    let t = FieldTower::new(2).unwrap();
    let l = t.extend_until(Predicate::ContainsRootOf { level: 0, poly: vec![vec![1], vec![1], vec![1]] }).unwrap();
    assert_eq!(t.degree(l), 2);
}

#[test]
fn artin_schreier_type_root() {
    // z - λ z^3 over F_9, λ a generator of F_9^×
    let t = FieldTower::new(3).unwrap();
    let l9 = t.level_containing(2).unwrap();
    let f9 = t.field(l9);
    let lam = f9.primitive_element();
    let poly = vec![f9.zero(), f9.one(), f9.zero(), f9.neg(&lam)];
    let l = t.extend_until(Predicate::ContainsRootOf { level: l9, poly: poly.clone() }).unwrap();
    let deg = t.degree(l);
    assert_eq!(18 % deg, 0, "degree {deg}");
    let roots = t.roots(l9, &poly).unwrap();
    assert_eq!(roots.len(), 3);
    let big = t.field(roots[0].0.level);
    let pe: Vec<Vec<u64>> = poly.iter().map(|c| t.embed(c, l9, roots[0].0.level)).collect();
    for (r, m) in &roots {
        assert_eq!(*m, 1);
        assert!(big.is_zero(&poly::eval(&*big, &pe, &r.coeffs)));
    }
}

#[test]
fn frobenius_examples() {
    let t = FieldTower::new(2).unwrap();
    let l = t.level_containing(2).unwrap();
    let x = t.element(l, &[0, 1]);
    assert_eq!(t.frobenius(&x, 1).coeffs, vec![1, 1]);
    assert_eq!(t.frobenius(&t.frobenius(&x, 1), -1), x);
    let c = t.element(0, &[1]);
    assert_eq!(t.frobenius(&c, 5), c);
}

#[test]
fn roots_examples() {
    let t = FieldTower::new(3).unwrap();
    let r = t.roots(0, &[vec![2], vec![0], vec![1]]).unwrap();
    assert_eq!(r.iter().map(|(e, m)| (e.coeffs.clone(), *m)).collect::<Vec<_>>(), vec![(vec![1], 1), (vec![2], 1)]);
    // x^p - x
    let t5 = FieldTower::new(5).unwrap();
    let mut f = vec![vec![0]; 6];
    f[1] = vec![4];
    f[5] = vec![1];
    let r = t5.roots(0, &f).unwrap();
    assert_eq!(r.len(), 5);
    assert_eq!(r[0].0.level, 0);
}

#[test]
fn splitting_and_multiplicity_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [2u64, 3, 5] {
        for _ in 0..10 {
            let t = FieldTower::new(p).unwrap();
            let fp = t.field(0);
            let mut f: Vec<Vec<u64>> = (0..4).map(|_| fp.random(&mut rng)).collect();
            f.push(fp.one());
            match t.roots(0, &f) {
                Ok(roots) => {
                    let total: usize = roots.iter().map(|x| x.1).sum();
                    assert_eq!(total, 4);
                    let lvl = roots[0].0.level;
                    let big = t.field(lvl);
                    let fe: Vec<Vec<u64>> = f.iter().map(|c| t.embed(c, 0, lvl)).collect();
                    for (r, _) in &roots {
                        assert!(big.is_zero(&poly::eval(&*big, &fe, &r.coeffs)));
                    }
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn embeddings_commute_with_frobenius_and_are_homs() {
    let t = FieldTower::new(3).unwrap();
    t.level_containing(2).unwrap();
    t.level_containing(4).unwrap();
    let top = t.num_levels() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for lvl in 0..top {
        let f = t.field(lvl);
        for _ in 0..20 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let ea = t.embed(&a, lvl, top);
            let eb = t.embed(&b, lvl, top);
            let big = t.field(top);
            assert_eq!(t.embed(&f.mul(&a, &b), lvl, top), big.mul(&ea, &eb));
            assert_eq!(t.embed(&f.add(&a, &b), lvl, top), big.add(&ea, &eb));
            assert_eq!(t.embed(&f.frobenius(&a, 1), lvl, top), big.frobenius(&ea, 1));
            // path independence through the middle level
            if lvl + 1 < top {
                assert_eq!(t.embed(&t.embed(&a, lvl, lvl + 1), lvl + 1, top), ea);
            }
        }
    }
}

#[test]
fn frobenius_m_is_identity_on_levels() {
    for (p, m) in [(2u64, 6usize), (3, 4), (5, 3)] {
        let f = GF::new(p, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
        for _ in 0..20 {
            let x = f.random(&mut rng);
            assert_eq!(f.frobenius(&x, m as i64), x);
        }
    }
}

#[test]
fn descriptor_roundtrip() {
    let f = GF::new(3, 5).unwrap();
    let d = f.descriptor();
    let json = serde_json::to_string(&d).unwrap();
    let back: unipotent::fields::FieldDescriptor = serde_json::from_str(&json).unwrap();
    assert_eq!(GF::from_descriptor(&back).unwrap(), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn frobenius_hom_random_pairs(a in proptest::collection::vec(0u64..3, 4), b in proptest::collection::vec(0u64..3, 4)) {
        let f = GF::new(3, 4).unwrap();
        prop_assert_eq!(f.pow(&f.add(&a, &b), 3), f.add(&f.pow(&a, 3), &f.pow(&b, 3)));
        prop_assert_eq!(f.pow(&f.mul(&a, &b), 3), f.mul(&f.pow(&a, 3), &f.pow(&b, 3)));
        prop_assert_eq!(f.frobenius(&a, 1), f.pow(&a, 3));
    }
}
