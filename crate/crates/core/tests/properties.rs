use fermion_codes::bitmath::{BitVec, BoolPoly, DEFAULT_MONOMIAL_BUDGET};
use fermion_codes::codes::{enumerate_basis, make_bravyi_kitaev, make_jordan_wigner, make_parity_code, BasisSpec};
use fermion_codes::fock_oracle::{apply_fermion_term, fermion_matrix, verify_equivalence};
use fermion_codes::pauli::{extract, PauliString, QubitOperator};
use fermion_codes::transform::{
    normal_order_blocks, transform_hamiltonian, FermionHamiltonian, FermionOp, FermionTerm, TransformOptions,
};
use num_complex::Complex64;
use proptest::prelude::*;

const BUDGET: usize = DEFAULT_MONOMIAL_BUDGET;

fn poly(vars: usize, masks: &[u8]) -> BoolPoly {
    let monomials: Vec<Vec<usize>> = masks
        .iter()
        .map(|m| (1..=vars).filter(|v| m >> (v - 1) & 1 == 1).collect())
        .collect();
    BoolPoly::from_monomials(vars, monomials).unwrap()
}

fn poly_pair() -> impl Strategy<Value = (usize, Vec<u8>, Vec<u8>)> {
    (1usize..=6).prop_flat_map(|vars| {
        let mask = 0u8..(1u8 << vars);
        (
            Just(vars),
            prop::collection::vec(mask.clone(), 0..8),
            prop::collection::vec(mask, 0..8),
        )
    })
}

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (0u64..1 << n, 0u64..1 << n).prop_map(move |(x, z)| PauliString::from_xz(BitVec::from_u64(n, x), BitVec::from_u64(n, z)))
}

fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let left = a[r * dim + k];
            if left.norm_sqr() == 0.0 {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += left * b[k * dim + c];
            }
        }
    }
    out
}

fn max_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Hermitian, particle-conserving Hamiltonian from hop and pair-density
/// parameters.
fn conserving_hamiltonian(modes: usize, hops: &[(usize, usize, f64)], pairs: &[(usize, usize, f64)]) -> FermionHamiltonian {
    let mut h = FermionHamiltonian::new(modes);
    for &(i, j, c) in hops {
        let (i, j) = (i % modes + 1, j % modes + 1);
        h.push(FermionTerm::hop(c, i, j)).unwrap();
        h.push(FermionTerm::hop(c, j, i)).unwrap();
    }
    for &(i, j, c) in pairs {
        h.push(FermionTerm::density_density(c, i % modes + 1, j % modes + 1)).unwrap();
    }
    h
}

fn term_from(modes: usize, spec: &[(usize, bool)], coeff: f64) -> FermionTerm {
    let ops = spec
        .iter()
        .map(|&(m, dagger)| {
            let mode = m % modes + 1;
            if dagger { FermionOp::create(mode) } else { FermionOp::annihilate(mode) }
        })
        .collect();
    FermionTerm::real(coeff, ops)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_signs_and_homomorphism((vars, f, g) in poly_pair()) {
        let (f, g) = (poly(vars, &f), poly(vars, &g));
        let xf = extract(&f, BUDGET).unwrap();
        for k in 0..1u64 << vars {
            let w = BitVec::from_u64(vars, k);
            let sign = if f.eval(&w).unwrap() { -1.0 } else { 1.0 };
            prop_assert!((xf.eval(&w) - sign).abs() < 1e-12);
        }
        let xg = extract(&g, BUDGET).unwrap();
        let sum = extract(&f.checked_add(&g).unwrap(), BUDGET).unwrap();
        prop_assert_eq!(sum, xf.mul(&xg, BUDGET).unwrap());
    }

    #[test]
    fn pauli_products_are_associative(a in pauli(5), b in pauli(5), c in pauli(5)) {
        let (p1, ab) = a.mul(&b);
        let (p2, ab_c) = ab.mul(&c);
        let (p3, bc) = b.mul(&c);
        let (p4, a_bc) = a.mul(&bc);
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(p1.times(p2), p3.times(p4));
    }

    #[test]
    fn pauli_commutation_matches_products(a in pauli(5), b in pauli(5)) {
        let (pab, ab) = a.mul(&b);
        let (pba, ba) = b.mul(&a);
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(a.commutes_with(&b), pab == pba);
    }

    #[test]
    fn operator_products_match_dense_products(
        terms_a in prop::collection::vec((pauli(3), -2.0f64..2.0, -2.0f64..2.0), 1..5),
        terms_b in prop::collection::vec((pauli(3), -2.0f64..2.0, -2.0f64..2.0), 1..5),
    ) {
        let build = |terms: Vec<(PauliString, f64, f64)>| {
            QubitOperator::from_terms(3, terms.into_iter().map(|(s, re, im)| (s, Complex64::new(re, im)))).unwrap()
        };
        let (a, b) = (build(terms_a), build(terms_b));
        let product = a.mul(&b).unwrap().to_dense().unwrap();
        let expected = matmul(&a.to_dense().unwrap(), &b.to_dense().unwrap(), 8);
        prop_assert!(max_gap(&product, &expected) < 1e-9);
    }

    #[test]
    fn linear_codes_match_the_oracle(
        modes in 4usize..=6,
        hops in prop::collection::vec((0usize..6, 0usize..6, -1.0f64..1.0), 1..6),
        pairs in prop::collection::vec((0usize..6, 0usize..6, -1.0f64..1.0), 0..4),
    ) {
        let h = conserving_hamiltonian(modes, &hops, &pairs);
        let basis = enumerate_basis(&BasisSpec::full(modes));
        for code in [make_jordan_wigner(modes), make_parity_code(modes), make_bravyi_kitaev(modes)] {
            let hq = transform_hamiltonian(&code, &h, TransformOptions::default()).unwrap().require_hermitian().unwrap();
            let report = verify_equivalence(&code, &h, &hq, &basis).unwrap();
            prop_assert!(report.passed(), "{}\n{}", code.label(), report);
        }
    }

    #[test]
    fn term_action_matches_dense_matrix(
        ops in prop::collection::vec((0usize..5, any::<bool>()), 1..5),
        coeff in -2.0f64..2.0,
    ) {
        let modes = 5;
        let term = term_from(modes, &ops, coeff);
        let h = FermionHamiltonian::from_terms(modes, vec![term.clone()]).unwrap();
        let dense = fermion_matrix(&h).unwrap();
        let dim = 1usize << modes;
        for col in 0..dim {
            let nu = BitVec::from_u64(modes, col as u64);
            let mut column = vec![Complex64::new(0.0, 0.0); dim];
            if let Some((amp, image)) = apply_fermion_term(&term, &nu) {
                column[image.to_u64() as usize] += amp;
            }
            let expected: Vec<Complex64> = (0..dim).map(|r| dense[r * dim + col]).collect();
            prop_assert!(max_gap(&column, &expected) < 1e-12);
        }
    }

    #[test]
    fn normal_ordering_preserves_the_action(
        creators in prop::collection::vec(0usize..5, 1..3),
        annihilators in prop::collection::vec(0usize..5, 1..3),
        shuffle in any::<u64>(),
        coeff in -2.0f64..2.0,
    ) {
        let modes = 5;
        let count = creators.len().min(annihilators.len());
        let mut spec: Vec<(usize, bool)> = creators[..count].iter().map(|&m| (m, true))
            .chain(annihilators[..count].iter().map(|&m| (m, false)))
            .collect();
        // A deterministic permutation from the random seed.
        let mut state = shuffle;
        for k in (1..spec.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            spec.swap(k, (state >> 33) as usize % (k + 1));
        }
        let h = FermionHamiltonian::from_terms(modes, vec![term_from(modes, &spec, coeff)]).unwrap();
        let ordered = normal_order_blocks(&h).unwrap();
        prop_assert!(ordered.terms().iter().all(FermionTerm::is_blocked));
        let gap = max_gap(&fermion_matrix(&h).unwrap(), &fermion_matrix(&ordered).unwrap());
        prop_assert!(gap < 1e-12);
    }
}
