//! Property-based tests of the algebraic kernel.

use proptest::prelude::*;

use hyperlie::catalog::{all_cases, get_case, CaseId};
use hyperlie::exalg::{IndexTuple, KForm, Scalar};
use hyperlie::liealg::LieAlgebra;
use hyperlie::quatstruct::lee_form;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(num, den)| Scalar::ratio(num, den))
}

fn tuple_strategy(dim: usize, grade: usize) -> impl Strategy<Value = IndexTuple> {
    prop::sample::subsequence((1..=dim).collect::<Vec<_>>(), grade)
        .prop_map(|indices| IndexTuple::new(&indices).expect("subsequence is increasing"))
}

fn form_strategy(dim: usize, grade: usize) -> impl Strategy<Value = KForm> {
    prop::collection::vec((tuple_strategy(dim, grade), scalar_strategy()), 0..4)
        .prop_map(move |terms| KForm::from_terms(dim, grade, terms).expect("valid terms"))
}

/// A dimension with two grades small enough to wedge inside it.
fn dim_and_grades() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=6).prop_flat_map(|dim| {
        (Just(dim), 0..=dim.min(3), 0..=dim.min(3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn wedge_is_graded_commutative((dim, ga, gb) in dim_and_grades(),
                                   seed_a in 0u64..1000, seed_b in 0u64..1000) {
        // derive forms from seeds to keep the strategy simple
        let a = seeded_form(dim, ga, seed_a);
        let b = seeded_form(dim, gb, seed_b);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let sign = if (ga * gb) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn wedge_is_associative((dim, ga, gb) in dim_and_grades(), gc in 0usize..=2,
                            sa in 0u64..1000, sb in 0u64..1000, sc in 0u64..1000) {
        let a = seeded_form(dim, ga, sa);
        let b = seeded_form(dim, gb, sb);
        let c = seeded_form(dim, gc.min(dim), sc);
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_distributes_over_linear_combinations(
        a in form_strategy(4, 1), b in form_strategy(4, 1), c in form_strategy(4, 2),
        x in scalar_strategy(), y in scalar_strategy())
    {
        let combo = KForm::linear_combine(&[x.clone(), y.clone()], &[a.clone(), b.clone()]).unwrap();
        let lhs = combo.wedge(&c).unwrap();
        let rhs = KForm::linear_combine(
            &[x, y],
            &[a.wedge(&c).unwrap(), b.wedge(&c).unwrap()],
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonicalization_is_idempotent(form in form_strategy(5, 2)) {
        let rebuilt = KForm::from_terms(
            form.dimension(),
            form.grade(),
            form.terms().map(|(t, c)| (t.clone(), c.clone())),
        ).unwrap();
        prop_assert_eq!(rebuilt, form);
    }

    #[test]
    fn display_parse_round_trip(form in form_strategy(4, 2)) {
        let text = form.to_string();
        let back = KForm::parse(&text, form.dimension(), form.grade()).unwrap();
        prop_assert_eq!(back, form);
    }

    #[test]
    fn d_squared_vanishes_on_catalog_algebras(
        case_index in 0usize..5, grade in 0usize..=2, seed in 0u64..10_000)
    {
        let case = get_case(CaseId::all()[case_index]);
        let form = seeded_form(4, grade, seed);
        let d = case.data.algebra().ce_differential(&form).unwrap();
        let dd = case.data.algebra().ce_differential(&d).unwrap();
        prop_assert!(dd.is_zero(), "d²({form}) = {dd}");
    }

    #[test]
    fn ce_differential_matches_the_alternating_sum_on_two_forms(
        case_index in 0usize..5, seed in 0u64..10_000)
    {
        // dσ(x,y,z) = -σ([x,y],z) + σ([x,z],y) - σ([y,z],x), evaluated via
        // bracket and contract_basis: an independent route to the same value
        let case = get_case(CaseId::all()[case_index]);
        let algebra = case.data.algebra();
        let sigma = seeded_form(4, 2, seed);
        let d = algebra.ce_differential(&sigma).unwrap();
        for i in 1..=4usize {
            for j in (i + 1)..=4 {
                for k in (j + 1)..=4 {
                    let expected = alternating_sum(algebra, &sigma, i, j, k);
                    prop_assert_eq!(d.contract_basis(&[i, j, k]).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn random_bracket_tables_tie_jacobi_to_d_squared(seed in 0u64..5_000) {
        // jacobi_check internally asserts that the cyclic-sum verdict and
        // d∘d agree; here we re-derive the d² side independently
        let algebra = seeded_antisymmetric_constants(4, seed);
        let verdict = algebra.jacobi_check();
        let mut d_squared_zero = true;
        for j in 1..=4 {
            let ej = KForm::basis(4, &[j]).unwrap();
            let dd = algebra
                .ce_differential(&algebra.ce_differential(&ej).unwrap())
                .unwrap();
            if !dd.is_zero() {
                d_squared_zero = false;
            }
        }
        prop_assert_eq!(verdict.holds, d_squared_zero);
    }

    #[test]
    fn lee_form_is_conformally_covariant(
        case_index in 0usize..5, num in 1i64..=12, den in 1i64..=12)
    {
        // scaling the metric by c > 0 scales each ω by c and fixes θ
        let case = get_case(CaseId::all()[case_index]);
        let c = Scalar::ratio(num, den);
        let metric = case.data.metric().scaled(&c).unwrap();
        let structure = case.data.structure().clone();
        let scaled = hyperlie::HyperHermitianData::new(
            case.data.algebra().clone(),
            metric,
            structure,
        ).unwrap();
        for alpha in 1..=3 {
            prop_assert_eq!(scaled.omega(alpha).clone(), case.data.omega(alpha).scale(&c));
        }
        let result = lee_form(&scaled).unwrap();
        prop_assert_eq!(result.theta, case.expected_theta.clone());
        prop_assert!(result.consistent);
    }
}

/// Deterministic pseudorandom form from a seed (cheap, no strategy nesting).
fn seeded_form(dim: usize, grade: usize, seed: u64) -> KForm {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    let tuples = increasing_tuples(dim, grade);
    let mut terms = Vec::new();
    for tuple in tuples {
        match next().rem_euclid(3) {
            0 => {}
            _ => {
                let num = next().rem_euclid(13) - 6;
                let den = next().rem_euclid(6) + 1;
                terms.push((
                    IndexTuple::new(&tuple).unwrap(),
                    Scalar::ratio(num, den),
                ));
            }
        }
    }
    KForm::from_terms(dim, grade, terms).unwrap()
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn recurse(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            recurse(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, k, 1, &mut Vec::new(), &mut out);
    out
}

fn seeded_antisymmetric_constants(dim: usize, seed: u64) -> LieAlgebra {
    let mut state = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(0x9E3779B97F4A7C15);
    let mut next = move || {
        state = state
            .wrapping_mul(0x2545F4914F6CDD1D)
            .wrapping_add(0x9E3779B97F4A7C15);
        (state >> 33) as i64
    };
    let mut entries = Vec::new();
    for i in 1..=dim {
        for j in (i + 1)..=dim {
            let mut coeffs = Vec::new();
            for k in 1..=dim {
                if next().rem_euclid(3) == 0 {
                    let num = next().rem_euclid(5) - 2;
                    if num != 0 {
                        coeffs.push((k, Scalar::from_int(num)));
                    }
                }
            }
            if !coeffs.is_empty() {
                entries.push((i, j, coeffs));
            }
        }
    }
    LieAlgebra::from_brackets(dim, entries).unwrap()
}

/// Independent oracle for the differential of a 2-form on basis triples.
fn alternating_sum(
    algebra: &LieAlgebra,
    sigma: &KForm,
    i: usize,
    j: usize,
    k: usize,
) -> Scalar {
    let eval = |x: &[Scalar], basis: usize| -> Scalar {
        // σ(x, e_basis) for a coefficient vector x
        let mut total = Scalar::zero();
        for (index, coeff) in x.iter().enumerate() {
            if !coeff.is_zero() {
                total += &(coeff * &sigma.contract_basis(&[index + 1, basis]).unwrap());
            }
        }
        total
    };
    let unit = |index: usize| {
        let mut v = vec![Scalar::zero(); algebra.dimension()];
        v[index - 1] = Scalar::one();
        v
    };
    let bracket = |a: usize, b: usize| algebra.bracket(&unit(a), &unit(b)).unwrap();
    -eval(&bracket(i, j), k) + eval(&bracket(i, k), j) - eval(&bracket(j, k), i)
}

#[test]
fn all_catalog_cases_exist_and_are_distinct() {
    let descriptions: Vec<&str> = all_cases().map(|c| c.description).collect();
    assert_eq!(descriptions.len(), 5);
    for (i, a) in descriptions.iter().enumerate() {
        for b in &descriptions[i + 1..] {
            assert_ne!(a, b);
        }
    }
}
