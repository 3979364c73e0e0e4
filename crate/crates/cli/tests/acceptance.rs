//! End-to-end checks of the advertised guarantees.  Each criterion prints
//! exactly one PASS/FAIL line; the process exits nonzero if any fails.

use std::cmp::Ordering;
use std::time::Instant;

use derperm::dialgebra::{
    decompose, dim_succ_formula, enumerate_weight_minus_one, mutated_axiom,
    verify_dialgebra_axioms,
};
use derperm::identities::{
    builtin_identity, consequence_space, evaluation_span_dim, multilinear_magma_monomials,
    operad_dim, verify_vanishes, IdentityTemplate,
};
use derperm::linalg::{MonomialIndexer, RatMatrix};
use derperm::rewrite::{enumerate_normal_monomials, leading_monomial, phi, to_succ_combination};
use derperm::{DiffPoly, Generator, MagmaOp, MagmaPoly, MagmaTerm, PermMonomial, Rational};
use derperm_cli::parser::{parse_expression, Value};
use num::{BigInt, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type CheckFn = fn() -> Check;

fn main() {
    let checks: [(&str, CheckFn); 7] = [
        ("criterion 1", criterion_1_dimension_formula),
        ("criterion 2", criterion_2_membership_round_trip),
        ("criterion 3", criterion_3_basis_images),
        ("criterion 4", criterion_4_identities_and_dimensions),
        ("criterion 5", criterion_5_dialgebra_axioms),
        ("criterion 6", criterion_6_direct_sum),
        ("criterion 7", criterion_7_property_suites),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("{}: PASS ({:.1}s)", name, start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("{}: FAIL {}", name, e);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1_dimension_formula() -> Check {
    let expected: [u64; 6] = [1, 2, 9, 40, 175, 756];
    for (n, e) in (1u32..=6).zip(expected) {
        let formula = dim_succ_formula(n);
        let enumerated = enumerate_normal_monomials(n).map_err(|e| e.to_string())?.len() as u64;
        ensure(
            formula == e && enumerated == e,
            format!("arity {}: formula={} enumerated={} expected={}", n, formula, enumerated, e),
        )?;
    }
    Ok(())
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut tail in compositions(total - head, parts - 1) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Multilinear monomials on x1..xn with total derivation order at most n.
/// Expressible monomials all have total order exactly n - 1, so the bound
/// covers every membership verdict the criterion can distinguish.
fn multilinear_monomials_bounded(n: u32) -> Vec<PermMonomial> {
    let mut out = Vec::new();
    for total in 0..=n {
        for ders in compositions(total, n as usize) {
            for last in 1..=n {
                let prefix: Vec<Generator> = (1..=n)
                    .filter(|v| *v != last)
                    .map(|v| Generator::new(v, ders[v as usize - 1]))
                    .collect();
                out.push(PermMonomial::new(
                    prefix,
                    Generator::new(last, ders[last as usize - 1]),
                ));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn criterion_2_membership_round_trip() -> Check {
    for n in 1..=5u32 {
        for m in multilinear_monomials_bounded(n) {
            let p = DiffPoly::monomial(m.clone());
            match (m.is_succ_member(), to_succ_combination(&p)) {
                (true, Ok(q)) => {
                    ensure(q.eval() == p, format!("round trip failed for {}", m))?;
                }
                (true, Err(e)) => return Err(format!("{} should rewrite: {}", m, e)),
                (false, Ok(_)) => return Err(format!("{} should not rewrite", m)),
                (false, Err(_)) => {}
            }
        }
    }
    Ok(())
}

fn criterion_3_basis_images() -> Check {
    for n in 1..=5u32 {
        let basis = enumerate_normal_monomials(n).map_err(|e| e.to_string())?;
        let ambient =
            MonomialIndexer::new(enumerate_weight_minus_one(n).map_err(|e| e.to_string())?);
        let mut mat = RatMatrix::new(ambient.len());
        for m in &basis {
            let image = phi(m).map_err(|e| e.to_string())?.eval();
            let (lead, coeff) = leading_monomial(&image).map_err(|e| e.to_string())?;
            ensure(
                lead == m && coeff.is_one(),
                format!("image of {} leads with {}*{}", m, coeff, lead),
            )?;
            mat.push_row(&ambient.coordinates(image.terms()).map_err(|e| e.to_string())?);
        }
        let expected = dim_succ_formula(n) as usize;
        let rank = mat.rank();
        ensure(
            rank == expected,
            format!("arity {}: image rank {} expected {}", n, rank, expected),
        )?;
    }
    Ok(())
}

fn criterion_4_identities_and_dimensions() -> Check {
    for name in ["id1", "id2", "id3", "id2deg5", "albert7"] {
        let t = builtin_identity(name).map_err(|e| e.to_string())?;
        let (vanishes, witness) = verify_vanishes(&t);
        ensure(vanishes, format!("{} fails with witness {}", name, witness))?;
    }

    let ids: Vec<IdentityTemplate> = ["id1", "id2", "id3"]
        .iter()
        .map(|n| builtin_identity(n).unwrap())
        .collect();
    for n in 3..=4u32 {
        let expected = dim_succ_formula(n) as usize;
        let od = operad_dim(&ids, n);
        let ev = evaluation_span_dim(n);
        ensure(
            od == expected && ev == expected,
            format!("arity {}: operad dim {} evaluation span {} expected {}", n, od, ev, expected),
        )?;
    }
    // arity 5: ambient 1680, consequence rank 1505, quotient 175
    let ambient = multilinear_magma_monomials(5).len();
    let rank = consequence_space(&ids, 5).rank();
    ensure(
        ambient == 1680 && rank == 1505,
        format!("arity 5: ambient {} rank {}", ambient, rank),
    )?;
    let ev5 = evaluation_span_dim(5);
    ensure(
        ambient - rank == 175 && ev5 == 175,
        format!("arity 5: quotient {} evaluation span {}", ambient - rank, ev5),
    )
}

fn criterion_5_dialgebra_axioms() -> Check {
    for check in verify_dialgebra_axioms() {
        ensure(
            check.passes,
            format!("{} fails with witness {}", check.name, check.witness),
        )?;
    }
    let (vanishes, witness) = verify_vanishes(&mutated_axiom());
    ensure(
        !vanishes && !witness.is_zero(),
        "mutated control unexpectedly vanishes",
    )
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let n: i64 = rng.gen_range(-6..=6);
        if n != 0 {
            break n;
        }
    };
    Rational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=4i64)))
}

fn criterion_6_direct_sum() -> Check {
    let mut spaces = Vec::new();
    for n in 2..=5u32 {
        let all = enumerate_weight_minus_one(n).map_err(|e| e.to_string())?;
        let expected = 2 * dim_succ_formula(n) as usize;
        let members = all.iter().filter(|m| m.last().der() == 0).count();
        ensure(
            all.len() == expected && members * 2 == expected,
            format!(
                "arity {}: {} monomials ({} with underived last) expected {}",
                n,
                all.len(),
                members,
                expected
            ),
        )?;
        for m in &all {
            ensure(
                m.is_succ_member() == (m.last().der() == 0),
                format!("partition mismatch at {}", m),
            )?;
        }
        spaces.push(all);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for case in 0..1000 {
        let all = &spaces[case % spaces.len()];
        let mut p = DiffPoly::zero();
        for _ in 0..rng.gen_range(1..=6) {
            let m = all[rng.gen_range(0..all.len())].clone();
            p.add_term(m, random_coeff(&mut rng));
        }
        let d = decompose(&p).map_err(|e| e.to_string())?;
        ensure(
            d.succ_part.add(&d.prec_part) == p,
            format!("decomposition does not reassemble {}", p),
        )?;
        ensure(
            d.succ_part.terms().all(|(m, _)| m.is_succ_member())
                && d.prec_part.terms().all(|(m, _)| m.last().der() != 0),
            format!("parts land in the wrong summand for {}", p),
        )?;
    }
    Ok(())
}

fn random_monomial(rng: &mut ChaCha8Rng) -> PermMonomial {
    let degree = rng.gen_range(1..=5);
    let gen = |rng: &mut ChaCha8Rng| Generator::new(rng.gen_range(1..=4), rng.gen_range(0..=5));
    let prefix: Vec<Generator> = (1..degree).map(|_| gen(rng)).collect();
    PermMonomial::new(prefix, gen(rng))
}

fn random_poly(rng: &mut ChaCha8Rng) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..rng.gen_range(1..=5) {
        p.add_term(random_monomial(rng), random_coeff(rng));
    }
    p
}

fn random_magma_term(rng: &mut ChaCha8Rng, depth: u32) -> MagmaTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return MagmaTerm::leaf(rng.gen_range(1..=3));
    }
    let op = [MagmaOp::Succ, MagmaOp::Prec, MagmaOp::Vdash, MagmaOp::Dashv]
        [rng.gen_range(0..4)];
    MagmaTerm::node(
        op,
        random_magma_term(rng, depth - 1),
        random_magma_term(rng, depth - 1),
    )
}

fn criterion_7_property_suites() -> Check {
    // Leibniz rule on random polynomials
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..300 {
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        ensure(
            a.mul(&b).derive() == a.derive().mul(&b).add(&a.mul(&b.derive())),
            format!("Leibniz rule fails for a={}, b={}", a, b),
        )?;
    }

    // associativity and left commutativity, exhaustive over three variables
    // with degrees of the three operands summing to at most 5
    let gens: Vec<Generator> = (1..=3u32)
        .flat_map(|v| (0..=2u32).map(move |d| Generator::new(v, d)))
        .collect();
    let mut by_degree: Vec<Vec<PermMonomial>> = vec![Vec::new()];
    for d in 1..=3usize {
        let mut prefixes: Vec<Vec<Generator>> = vec![Vec::new()];
        for _ in 1..d {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    gens.iter().map(move |g| {
                        let mut q = p.clone();
                        q.push(*g);
                        q
                    })
                })
                .collect();
        }
        let mut ms: Vec<PermMonomial> = prefixes
            .into_iter()
            .flat_map(|p| gens.iter().map(move |g| PermMonomial::new(p.clone(), *g)))
            .collect();
        ms.sort();
        ms.dedup();
        by_degree.push(ms);
    }
    for da in 1..=3usize {
        for db in 1..=3usize {
            for dc in 1..=3usize {
                if da + db + dc > 5 {
                    continue;
                }
                for a in &by_degree[da] {
                    for b in &by_degree[db] {
                        for c in &by_degree[dc] {
                            let ab_c = a.mul(b).mul(c);
                            ensure(
                                ab_c == a.mul(&b.mul(c)),
                                format!("associativity fails at ({})({})({})", a, b, c),
                            )?;
                            ensure(
                                ab_c == b.mul(a).mul(c),
                                format!("left commutativity fails at ({})({})({})", a, b, c),
                            )?;
                        }
                    }
                }
            }
        }
    }

    // the monomial order is total: 10^4 random pairs
    for _ in 0..10_000 {
        let a = random_monomial(&mut rng);
        let b = random_monomial(&mut rng);
        ensure(a.cmp(&a) == Ordering::Equal, "order is not reflexive")?;
        ensure(
            a.cmp(&b) == b.cmp(&a).reverse(),
            format!("order is not antisymmetric on {} / {}", a, b),
        )?;
        ensure(
            (a.cmp(&b) == Ordering::Equal) == (a == b),
            format!("order disagrees with equality on {} / {}", a, b),
        )?;
    }

    // parse/print round trip: 10^3 random polynomials plus magma samples
    for _ in 0..1_000 {
        let p = random_poly(&mut rng);
        let printed = p.to_string();
        let back = parse_expression(&printed)
            .map_err(|e| format!("reparse of {:?} failed: {}", printed, e))?
            .into_diff()
            .map_err(|e| format!("reparse of {:?} is not a polynomial: {}", printed, e))?;
        ensure(back == p, format!("round trip changed {:?}", printed))?;
    }
    for _ in 0..200 {
        let mut p = MagmaPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            p.add_term(random_magma_term(&mut rng, 3), random_coeff(&mut rng));
        }
        if p.is_zero() {
            continue;
        }
        let printed = p.to_string();
        match parse_expression(&printed)
            .map_err(|e| format!("reparse of {:?} failed: {}", printed, e))?
        {
            Value::Magma(q) => ensure(q == p, format!("round trip changed {:?}", printed))?,
            v => return Err(format!("{:?} reparsed as {:?}", printed, v)),
        }
    }
    Ok(())
}
