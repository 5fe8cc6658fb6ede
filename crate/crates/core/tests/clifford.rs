use cjw_core::clifford::{
    blade_grade, blade_mask, dirac_fd, dot_wedge, payload_path, read_field, write_field, GridField, GridGeometry,
    Multivector, Vector,
};
use cjw_core::{Complex64, Error};
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    let scale = 1.0 + a.norm().max(b.norm());
    a.try_sub(b).unwrap().norm() <= tol * scale
}

/// Brute-force blade product on sorted index lists: bubble sort with contraction.
fn reference_blade_product(a: &[usize], b: &[usize]) -> (Vec<usize>, f64) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1.0;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                word.drain(i..i + 2);
                sign = -sign;
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (word, sign);
        }
    }
}

fn generators_of(m: usize, idx: usize) -> Vec<usize> {
    let mask = blade_mask(m, idx);
    (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect()
}

#[test]
fn spec_products() {
    let e1 = Multivector::blade(2, &[1]).unwrap();
    let e2 = Multivector::blade(2, &[2]).unwrap();
    let e12 = Multivector::blade(2, &[1, 2]).unwrap();
    assert_eq!(&e1 * &e1, Multivector::scalar(2, c(-1.0)).unwrap());
    assert_eq!(&e1 * &e2, e12);
    assert_eq!(&e2 * &e1, -&e12);
    let x = Vector::new(vec![3.0, 4.0]).to_multivector().unwrap();
    assert_eq!(&x * &x, Multivector::scalar(2, c(-25.0)).unwrap());
}

#[test]
fn spec_anti_involutions() {
    let e1 = Multivector::blade(2, &[1]).unwrap();
    let e12 = Multivector::blade(2, &[1, 2]).unwrap();
    assert_eq!(e1.conjugate(), -&e1);
    assert_eq!(e12.conjugate(), -&e12);
    assert_eq!(e12.inversion(), -&e12);
    let i = Multivector::scalar(2, Complex64::new(0.0, 2.0)).unwrap();
    assert_eq!(i.conjugate().scalar_part(), Complex64::new(0.0, -2.0));
    assert_eq!(i.inversion().scalar_part(), Complex64::new(0.0, 2.0));
}

#[test]
fn spec_dot_wedge() {
    let (d, w) = dot_wedge(&Vector::new(vec![1.0, 0.0]), &Vector::new(vec![0.0, 1.0])).unwrap();
    assert_eq!(d, 0.0);
    assert_eq!(w, Multivector::blade(2, &[1, 2]).unwrap());

    let x = Vector::new(vec![1.0, 1.0]);
    let (d, w) = dot_wedge(&x, &x).unwrap();
    assert_eq!(d, -2.0);
    assert_eq!(w.norm(), 0.0);

    let (x, y) = (Vector::new(vec![1.0, 2.0]), Vector::new(vec![3.0, 4.0]));
    let (d, w) = dot_wedge(&x, &y).unwrap();
    assert_eq!(d, -11.0);
    assert_eq!(w.coeff(3), c(-2.0));
    let prod = x.to_multivector().unwrap().geometric_product(&y.to_multivector().unwrap()).unwrap();
    let recomposed = Multivector::scalar(2, c(d)).unwrap().try_add(&w).unwrap();
    assert_eq!(prod, recomposed);
}

#[test]
fn blade_table_matches_bubble_sort() {
    for m in 1..=6 {
        let n = 1usize << m;
        for i in 0..n {
            for j in 0..n {
                let (word, sign) = reference_blade_product(&generators_of(m, i), &generators_of(m, j));
                let lhs = &Multivector::blade(m, &generators_of(m, i)).unwrap()
                    * &Multivector::blade(m, &generators_of(m, j)).unwrap();
                let rhs = Multivector::blade(m, &word).unwrap().scale(c(sign));
                assert_eq!(lhs, rhs, "m={m} i={i} j={j}");
            }
        }
    }
}

#[test]
fn grade_projection_partitions() {
    let m = 4;
    let coeffs: Vec<Complex64> = (0..16).map(|k| Complex64::new(k as f64, -(k as f64) / 3.0)).collect();
    let a = Multivector::from_coeffs(m, coeffs).unwrap();
    let mut sum = Multivector::zero(m).unwrap();
    for k in 0..=m {
        let g = a.grade(k);
        for (idx, v) in g.coeffs().iter().enumerate() {
            if blade_grade(m, idx) != k {
                assert_eq!(*v, c(0.0));
            }
        }
        sum = sum.try_add(&g).unwrap();
    }
    assert_eq!(sum, a);
    assert_eq!(a.coeffs().len(), 16);
}

#[test]
fn dimension_checks() {
    let a = Multivector::zero(2).unwrap();
    let b = Multivector::zero(3).unwrap();
    assert!(matches!(a.geometric_product(&b), Err(Error::DimensionMismatch { .. })));
    assert!(Multivector::zero(9).is_err());
    assert!(Multivector::from_coeffs(2, vec![c(1.0); 3]).is_err());
}

fn multivector(m: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << m)
        .prop_map(move |v| Multivector::from_coeffs(m, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (2usize..=4).prop_flat_map(|m| (multivector(m), multivector(m), multivector(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative_and_distributive((a, b, c3) in triple()) {
        let left = &(&a * &b) * &c3;
        let right = &a * &(&b * &c3);
        prop_assert!(close(&left, &right, 1e-12));
        let dist = &a * &(&b + &c3);
        prop_assert!(close(&dist, &(&(&a * &b) + &(&a * &c3)), 1e-12));
    }

    #[test]
    fn anti_involution_laws((a, b, _c) in triple()) {
        let ab = &a * &b;
        prop_assert!(close(&ab.conjugate(), &(&b.conjugate() * &a.conjugate()), 1e-12));
        prop_assert!(close(&ab.inversion(), &(&b.inversion() * &a.inversion()), 1e-12));
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.inversion().inversion(), a);
    }

    #[test]
    fn vector_square_is_minus_norm(v in prop::collection::vec(-3.0f64..3.0, 2..=5)) {
        let x = Vector::new(v);
        let mv = x.to_multivector().unwrap();
        for (idx, coeff) in mv.coeffs().iter().enumerate() {
            if blade_grade(x.dim(), idx) != 1 {
                prop_assert_eq!(*coeff, c(0.0));
            }
        }
        let sq = &mv * &mv;
        let expect = Multivector::scalar(x.dim(), c(-x.dot(&x))).unwrap();
        prop_assert!(close(&sq, &expect, 1e-13));
    }

    #[test]
    fn generators_anticommute(m in 2usize..=6, j in 1usize..=6, k in 1usize..=6) {
        prop_assume!(j <= m && k <= m);
        let ej = Multivector::blade(m, &[j]).unwrap();
        let ek = Multivector::blade(m, &[k]).unwrap();
        let anti = &(&ej * &ek) + &(&ek * &ej);
        let expect = if j == k { -2.0 } else { 0.0 };
        prop_assert_eq!(anti, Multivector::scalar(m, c(expect)).unwrap());
    }
}

#[test]
fn dirac_fd_examples() {
    let geo = GridGeometry::cube(2, 24, -1.0, 1.0).unwrap();
    let one = GridField::from_scalar_fn(geo.clone(), |_| c(1.0));
    let d = dirac_fd(&one).unwrap();
    for (_, data) in d.channels() {
        assert!(data.iter().all(|v| v.norm() < 1e-12));
    }

    // |x|² has gradient 2x; central differences are exact on quadratics
    let sq = GridField::from_scalar_fn(geo.clone(), |x| c(x.dot(x)));
    let d = dirac_fd(&sq).unwrap();
    for i in 0..geo.len() {
        let x = geo.position(i);
        let s = d.sample(i);
        assert!((s.coeff(1) - c(2.0 * x.0[0])).norm() < 1e-10);
        assert!((s.coeff(2) - c(2.0 * x.0[1])).norm() < 1e-10);
    }

    let small = GridGeometry::new(vec![4, 8], vec![0.1, 0.1], vec![0.0, 0.0]).unwrap();
    let f = GridField::from_scalar_fn(small, |_| c(1.0));
    assert!(matches!(dirac_fd(&f), Err(Error::GridTooSmall { axis: 0, len: 4, min: 5 })));
}

#[test]
fn field_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let geo = GridGeometry::new(vec![5, 7], vec![0.25, 0.5], vec![-1.0, 2.0]).unwrap();
    let f = GridField::from_multivector_fn(geo, |x| {
        let v = x.to_multivector().unwrap();
        &v * &v.scale(Complex64::new(0.3, -1.1))
    })
    .unwrap();
    let path = dir.path().join("field.json");
    write_field(&f, &path).unwrap();
    assert!(payload_path(&path).exists());
    let back = read_field(&path).unwrap();
    assert_eq!(back, f);
}
