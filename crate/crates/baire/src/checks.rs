//! Executable property checks at desk scale. Each check samples with a
//! fixed seed and returns a one-line summary, or the first counterexample.

use crate::eval;
use crate::games::{self, adjudicate_run, GameVerdict, Side};
use crate::machine::{DigitMap, Machine};
use crate::name::{encode_machine, eval_name, eval_name_literal, universal, Fuel, Status};
use crate::nat::{pair_u64, unpair_u64, Nat};
use crate::problems::{self, certified_universal, Problem, ProblemBundle, SetExpr, Verdict};
use crate::reductions::{self, Witness};
use crate::sample::{stock_machines, Sampler};
use crate::smn::{fixpoint, param_fixpoint, smn_transform, NameTransformer};
use crate::stream::{Stream, Tail};
use crate::term::Term;
use crate::word::{interleave_words, word_code, word_decode, Word};

pub type CheckResult = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn w(d: &[u64]) -> Word {
    Word::from_digits(d)
}

/// `a` and `b` agree wherever both are defined.
pub fn agree(a: &Word, b: &Word) -> bool {
    a.comparable(b)
}

pub fn coding_laws(limit: u64, samples: u64, seed: u64) -> CheckResult {
    for m in 0..limit {
        let (n, k) = unpair_u64(m);
        ensure!(pair_u64(n, k) == Some(m), "cantor round trip fails at {m}");
        let big = Nat::small(m);
        let (bn, bk) = big.unpair();
        ensure!(Nat::pair(&bn, &bk) == big, "nat round trip fails at {m}");
        let u = word_decode(&big);
        ensure!(word_code(&u) == big, "word round trip fails at {m}");
    }
    let side = (limit as f64).sqrt() as u64;
    for n in 0..side {
        for k in 0..side {
            let m = pair_u64(n, k).unwrap();
            ensure!(m == (n + k) * (n + k + 1) / 2 + k, "pair formula fails at ({n},{k})");
            ensure!(unpair_u64(m) == (n, k), "unpair fails at ({n},{k})");
        }
    }
    let mut s = Sampler::new(seed);
    for _ in 0..samples / 10 {
        let p = s.stream(16);
        let q = s.stream(16);
        let r = Stream::interleave(&p, &q);
        let cut = s.stream(16);
        for _ in 0..10 {
            let i = s.below(1000);
            ensure!(r.digit(2 * i) == p.digit(i) && r.digit(2 * i + 1) == q.digit(i), "interleave fails at {i}");
            ensure!(r.even_part().digit(i) == p.digit(i), "even_part fails at {i}");
            ensure!(r.odd_part().digit(i) == q.digit(i), "odd_part fails at {i}");
            let back = Stream::interleave(&cut.even_part(), &cut.odd_part());
            ensure!(back.digit(i) == cut.digit(i), "split/interleave fails at {i}");
        }
    }
    let merged = Stream::merge("rows", |i| Stream::literal(Word::from_digits(&[i]), Tail::Count(Nat::small(i * 7))));
    for _ in 0..samples {
        let i = s.below(64);
        let j = s.below(64);
        let expect = if j == 0 { Nat::small(i) } else { Nat::small(i * 7 + j - 1) };
        ensure!(merged.project(i).digit(j) == expect, "project∘merge fails at ({i},{j})");
        ensure!(merged.digit(pair_u64(i, j).unwrap()) == expect, "merge indexing fails at ({i},{j})");
    }
    let x = interleave_words(&w(&[0, 2]), &w(&[1]));
    ensure!(x == w(&[0, 1, 2]), "word interleave gives {x}");
    Ok(format!("bijections exhaustive below {limit}; {samples} interleave and {samples} merge indices"))
}

fn hand_inconsistent_names() -> Vec<(Stream, u64, u64)> {
    let pair = |u: &[u64], a: &[u64]| Nat::pair(&word_code(&w(u)), &word_code(&w(a)));
    let id = |n: u64| Nat::pair(&Nat::small(n), &Nat::small(n));
    let cases: Vec<(Vec<Nat>, u64, u64)> = vec![
        (vec![pair(&[], &[1]), pair(&[], &[2])], 0, 1),
        (vec![pair(&[0], &[1]), pair(&[0, 0], &[2])], 0, 1),
        (vec![pair(&[0, 0], &[2]), pair(&[0], &[1])], 0, 1),
        (vec![id(0), id(1), id(2), pair(&[0], &[3])], 1, 3),
        (vec![pair(&[], &[5]), pair(&[1], &[6])], 0, 1),
        (vec![pair(&[], &[1, 2]), pair(&[3], &[1, 3])], 0, 1),
        (vec![pair(&[1], &[]), pair(&[2], &[4]), pair(&[2], &[5])], 1, 2),
        (vec![id(0), pair(&[], &[0])], 0, 1),
        (vec![pair(&[0], &[0]), pair(&[1], &[1]), pair(&[1, 1], &[2])], 1, 2),
        (vec![id(0), id(1), id(3), id(7), pair(&[1, 5], &[2])], 2, 4),
    ];
    cases
        .into_iter()
        .map(|(ds, a, b)| (Stream::literal(ds.into(), Tail::Cycle(w(&[0]))), a, b))
        .collect()
}

pub fn phi_semantics(machines: u64, words: u64, triples: u64, depth: u64, seed: u64) -> CheckResult {
    let mut s = Sampler::new(seed);
    for mi in 0..machines {
        let g = s.machine(3);
        let q = encode_machine(&g);
        for wi in 0..words {
            // symbolic route on long words
            let len = s.below(depth + 1) as usize;
            let u = s.word_of_len(len, 4);
            let direct = g.apply_word(&u);
            let sym = eval_name(&q, u.clone(), Fuel(len as u64)).output;
            ensure!(sym == direct, "machine {mi} word {wi}: symbolic {sym} vs direct {direct} on {u}");
            let deep = eval_name(&q, u.clone(), Fuel(depth)).output;
            ensure!(direct.is_prefix_of(&deep), "machine {mi} word {wi}: {direct} ⋢ {deep} at fuel {depth}");
            // literal route on words early in the enumeration
            if wi % 10 == 0 {
                let n = s.below(400);
                let u = word_decode(&Nat::small(n));
                let direct = g.apply_word(&u);
                let lit = eval_name_literal(&q, u.clone(), Fuel(n / 2));
                ensure!(lit.output.is_prefix_of(&direct), "machine {mi}: literal {} not ⊑ {direct}", lit.output);
                let lit = eval_name_literal(&q, u.clone(), Fuel(n + 1));
                ensure!(lit.output == direct, "machine {mi}: literal {} ≠ {direct} on {u} ({g:?})", lit.output);
            }
        }
    }
    for t in 0..triples {
        let q = s.name();
        let v = s.word_of_len(depth as usize, 4);
        let cut = s.below(depth + 1) as usize;
        let u = v.take(cut);
        let f1 = s.below(64);
        let f2 = f1 + s.below(64);
        let a = eval_name_literal(&q, u.clone(), Fuel(f1));
        let b = eval_name_literal(&q, u.clone(), Fuel(f2));
        ensure!(a.output.is_prefix_of(&b.output), "triple {t}: fuel monotonicity fails");
        let c = eval_name_literal(&q, v.clone(), Fuel(f1));
        ensure!(a.output.is_prefix_of(&c.output), "triple {t}: input monotonicity fails");
        let sa = eval_name(&q, u.clone(), Fuel(f1 % (depth + 1))).output;
        let sb = eval_name(&q, v.clone(), Fuel(f2 % (depth + 1) + f1 % (depth + 1))).output;
        ensure!(sa.is_prefix_of(&sb), "triple {t}: monotonicity on the symbolic route fails");
    }
    for (i, (q, first, second)) in hand_inconsistent_names().into_iter().enumerate() {
        let x = w(&[0, 0, 0, 0]);
        let at = eval_name_literal(&q, x.clone(), Fuel(second + 1));
        ensure!(
            at.status == Status::InconsistentName { first, second },
            "name {i}: expected inconsistency at ({first},{second}), got {:?}",
            at.status
        );
        let before = eval_name_literal(&q, x.clone(), Fuel(second));
        ensure!(before.is_consistent(), "name {i}: flagged too early");
        let later = eval_name_literal(&q, x.clone(), Fuel(second + 50));
        ensure!(later == at, "name {i}: output not frozen");
        let longer = eval_name_literal(&q, w(&[0, 0, 0, 0, 1, 2]), Fuel(second + 50));
        ensure!(!longer.is_consistent(), "name {i}: inconsistency not stable");
    }
    Ok(format!(
        "{machines}×{words} machine/word pairs, {triples} monotonicity triples, 10 inconsistent names"
    ))
}

pub fn smn_contract(samples: u64, depth: u64, seed: u64) -> CheckResult {
    let mut s = Sampler::new(seed);
    for i in 0..samples {
        let f = s.machine(3);
        let q = s.stream(8);
        let p = s.stream(8);
        let sq = smn_transform(&f).apply(&q);
        let lhs = eval_name(&sq, p.clone(), Fuel(depth)).output;
        let rhs = eval::eval(&Term::apply(f.clone(), Term::interleave(Term::stream(q.clone()), Term::stream(p.clone()))), depth);
        ensure!(lhs == rhs, "sample {i}: Φ_S(q)(p) = {lhs} but F⟨q,p⟩ = {rhs} for {f:?}");
        // the listing read pair by pair never says more than the limit
        let lit = eval_name_literal(&sq, p.clone(), Fuel(48)).output;
        let long = eval::eval(&Term::apply(f.clone(), Term::stream(Stream::interleave(&q, &p))), 64);
        ensure!(lit.is_prefix_of(&long), "sample {i}: literal route {lit} ⋢ {long}");
    }
    Ok(format!("{samples} random (F, q, p) agree to depth {depth}"))
}

/// Total name transformers `Φ_p = Smn(F) ∘ G`.
fn transformer_names(s: &mut Sampler, n: u64) -> Vec<Stream> {
    (0..n)
        .map(|_| {
            let f = s.machine(2);
            let g = s.productive_machine(1);
            encode_machine(&Machine::compose(Machine::smn(f), g))
        })
        .collect()
}

pub fn recursion_theorems(transformers: u64, names: u64, depth: u64, seed: u64) -> CheckResult {
    let mut s = Sampler::new(seed);
    for (i, p) in transformer_names(&mut s, transformers).into_iter().enumerate() {
        let tp = fixpoint(&p);
        let phi_p_tp = Stream::from_term(Term::apply(Machine::universal(), Term::stream(Stream::interleave(&p, &tp))));
        for j in 0..20 {
            let x = s.stream(4);
            let lhs = eval_name(&tp, x.clone(), Fuel(depth)).output;
            let rhs = eval_name(&phi_p_tp, x.clone(), Fuel(depth)).output;
            ensure!(lhs == rhs, "transformer {i} input {j}: Φ_T(p) = {lhs} but Φ_Φp(T(p)) = {rhs}");
        }
    }
    for (label, f) in stock_machines() {
        let r = param_fixpoint(&f);
        for j in 0..names {
            let q = if j % 2 == 0 { s.name() } else { s.stream(8) };
            let rq = r.apply(&q);
            let lhs = universal(&rq, Fuel(depth)).output;
            let rhs = eval::eval(&Term::apply(f.clone(), Term::interleave(Term::stream(q.clone()), Term::stream(rq.clone()))), depth);
            let (lhs, rhs) = (lhs.take(depth as usize), rhs.take(depth as usize));
            ensure!(lhs == rhs, "param_fixpoint {label}, q #{j}: U R(q) = {lhs} but F⟨q,R(q)⟩ = {rhs}");
        }
    }
    let quine = encode_machine(&Machine::smn(Machine::even()));
    let tp = fixpoint(&quine);
    for j in 0..10 {
        let x = s.stream(4);
        let out = eval_name(&tp, x, Fuel(depth)).output;
        ensure!(out.len() as u64 == depth, "quine input {j}: only {} digits certified", out.len());
        ensure!(out == tp.prefix(depth as usize), "quine input {j}: Φ_T(p)(x) ≠ T(p)");
    }
    Ok(format!(
        "fixpoint on {transformers} transformers, param_fixpoint on {} stock F × {names} q, quine, depth {depth}",
        stock_machines().len()
    ))
}

/// `U D(q)` and `Φ_q D(q)` agree where both are certified, and `DIS` never
/// accepts `(D(q), Φ_q D(q))`.
pub fn discontinuity_on(d: &NameTransformer, names: u64, depth: u64, seed: u64) -> CheckResult {
    let mut s = Sampler::new(seed);
    let dis = problems::dis_problem().oracle;
    let mut certified = 0usize;
    for i in 0..names {
        let q = s.name();
        let dq = d.apply(&q);
        let lhs = universal(&dq, Fuel(depth)).output;
        let rhs = eval_name(&q, dq.clone(), Fuel(depth)).output;
        ensure!(agree(&lhs, &rhs), "name {i}: U D(q) = {lhs} but Φ_q D(q) = {rhs}");
        certified += lhs.len().min(rhs.len());
        ensure!(dis.dom_adj(&dq.prefix(depth as usize)) == Verdict::Accept, "name {i}: D(q) outside dom DIS");
        for k in 1..=depth as usize {
            let v = dis.graph_adj(&dq.prefix(k), &rhs.take(k));
            ensure!(v != Verdict::Accept, "name {i}: DIS accepts Φ_q D(q) at depth {k}");
        }
    }
    Ok(format!("{names} names, {certified} mutually certified digits, no accepted diagonal pair"))
}

pub fn dis_discontinuity(names: u64, depth: u64, seed: u64) -> CheckResult {
    discontinuity_on(&problems::dis_discontinuity(), names, depth, seed)
}

fn zero_rejects(label: &str, r: &reductions::Report) -> Result<(), String> {
    ensure!(!r.refuted(), "{label}: refuted by {:?}", r.first_refutation);
    ensure!(r.samples > 0, "{label}: no samples");
    Ok(())
}

pub fn witness_compilers(samples: u64, depth: u64, seed: u64) -> CheckResult {
    let fuel = Fuel(64 * depth);
    let id = problems::id_problem();
    let r = reductions::verify_reduction(&*id.oracle, &id, &Witness::identity(), samples, depth, fuel, seed).map_err(|e| e.to_string())?;
    zero_rejects("id ≤ id", &r)?;

    let dis = problems::dis_problem();
    let lpo = problems::lpo_problem();
    let r = reductions::verify_reduction(&*dis.oracle, &lpo, &reductions::dis_to_lpo(), samples, depth, fuel, seed).map_err(|e| e.to_string())?;
    zero_rejects("DIS ≤ LPO", &r)?;

    // DIS has no computable realizer: every candidate must fail to be refuted
    let wit = reductions::disc_to_dis_reduction(&problems::dis_discontinuity());
    let mut s = Sampler::new(seed);
    let per = (samples / 10).max(1);
    for c in 0..10 {
        let cand = ProblemBundle::new(dis.oracle.clone()).with_realizer(s.machine(2));
        let r = reductions::verify_reduction(&*dis.oracle, &cand, &wit, per, depth, fuel, seed + c).map_err(|e| e.to_string())?;
        zero_rejects("DIS ≤ DIS via the discontinuity", &r)?;
    }

    let even = SetExpr::FirstMod { modulus: 2, residue: 0 }.oracle();
    let all = SetExpr::All.oracle();
    let four = SetExpr::FirstIn(vec![Nat::small(4)]).oracle();
    let cases = [
        ("h=id", DigitMap::Affine { mul: 1, add: 0 }, even.clone(), even.clone()),
        ("h=2n", DigitMap::Affine { mul: 2, add: 0 }, all.clone(), even.clone()),
        ("h=4", DigitMap::Const(Nat::small(4)), all.clone(), four.clone()),
    ];
    for (label, h, a, b) in cases {
        let wit = reductions::many_one_to_sw(&h, &a, &b).map_err(|e| e.to_string())?;
        let fa = problems::chi_problem(a);
        let gb = problems::chi_problem(b);
        let r = reductions::verify_reduction(&*fa.oracle, &gb, &wit, samples, depth, fuel, seed).map_err(|e| e.to_string())?;
        zero_rejects(label, &r)?;
    }

    let d = reductions::reduction_to_disc(&Witness::identity());
    discontinuity_on(&d, 50, depth, seed).map_err(|e| format!("reduction_to_disc(id): {e}"))?;
    Ok(format!("zero rejects at depth {depth} over {samples} samples for all compiled witnesses"))
}

pub fn game_compilers(opponents: u64, depth: u64, seed: u64) -> CheckResult {
    let rounds = depth as usize;
    let bundles = [
        problems::id_problem(),
        problems::chi_problem(SetExpr::FirstMod { modulus: 2, residue: 0 }.oracle()),
        problems::chi_problem(SetExpr::FirstIn(vec![Nat::small(3)]).oracle()),
    ];
    let opponent_i = |k: u64| match k {
        0 => games::stall(Side::I),
        1 => games::constant(Side::I, w(&[3])),
        2 => games::constant(Side::I, w(&[0, 1])),
        _ => games::random(Side::I, seed.wrapping_add(k)),
    };
    let opponent_ii = |k: u64| match k {
        0 => games::stall(Side::II),
        1 => games::echo(),
        2 => games::constant(Side::II, w(&[0])),
        _ => games::random(Side::II, seed.wrapping_add(k)),
    };
    for b in &bundles {
        let sigma = games::realizer_to_strategy_ii(b.realizer.as_ref().unwrap());
        for k in 0..opponents {
            let run = games::run_wadge(&opponent_i(k), &sigma, rounds);
            ensure!(adjudicate_run(&run, &*b.oracle, rounds * 3) != GameVerdict::I, "{}: opponent {k} beats the compiled II", b.name());
        }
    }
    let dis = problems::dis_problem();
    let d = dis.discontinuity.clone().unwrap();
    let sigma_i = games::disc_to_strategy_i(d.machine());
    for k in 0..opponents {
        let run = games::run_wadge(&sigma_i, &opponent_ii(k), rounds);
        let x = run.x().take(depth as usize);
        ensure!(adjudicate_run(&run, &*dis.oracle, depth as usize) != GameVerdict::II, "DIS: opponent {k} beats the compiled I");
        let ux = certified_universal(&x);
        ensure!(agree(&ux, &run.y()), "DIS: y = {} does not track U(x) = {ux} against opponent {k}", run.y());
    }
    // realizer → strategy → realizer
    let mut s = Sampler::new(seed);
    for i in 0..20 {
        let h = s.machine(2);
        let back = games::strategy_ii_to_realizer(&games::realizer_to_strategy_ii(&h));
        for _ in 0..10 {
            let len = 1 + s.below(depth) as usize;
            let u = s.word_of_len(len, 4);
            ensure!(back.apply_word(&u) == h.apply_word(&u), "round trip {i} differs on {u} for {h:?}");
        }
    }
    // discontinuity → strategy → discontinuity, on DIS
    let back = games::strategy_i_to_disc(&sigma_i);
    discontinuity_on(&back, 20, depth, seed).map_err(|e| format!("I round trip: {e}"))?;
    let c = games::strategy_i_to_disc(&games::constant(Side::I, w(&[7])));
    let q = s.name();
    ensure!(c.apply(&q).prefix(depth as usize) == Word::repeat(&Nat::small(7), depth as usize), "constant I strategy");
    Ok(format!("{} bundles and DIS against {opponents} opponents each; both round trips", bundles.len()))
}

pub fn translations(histories: u64, games_n: u64, seed: u64) -> CheckResult {
    let mut s = Sampler::new(seed);
    for i in 0..histories {
        let side = if i % 2 == 0 { Side::I } else { Side::II };
        let sigma = games::random(side, seed + i);
        let back = games::lipschitz_to_wadge(&games::wadge_to_lipschitz(&sigma));
        let len = s.below(6) as usize;
        let hist: Vec<Word> = (0..len).map(|_| s.word(3, 4)).collect();
        ensure!(back.play(&hist) == sigma.play(&hist), "history {i}: Wadge→Lipschitz→Wadge differs");
        let digits: Vec<Nat> = (0..len).map(|_| s.digit(64)).collect();
        let lam = games::wadge_to_lipschitz(&games::lipschitz_to_wadge(&games::digit_random(side, seed + i, 64)));
        ensure!(lam.play(&digits) == games::digit_random(side, seed + i, 64).play(&digits), "history {i}: Lipschitz→Wadge→Lipschitz differs");
    }
    let problems: Vec<std::sync::Arc<dyn Problem>> = vec![
        problems::id_problem().oracle,
        problems::lpo_problem().oracle,
        problems::chi_problem(SetExpr::FirstMod { modulus: 2, residue: 0 }.oracle()).oracle,
        problems::nrng_problem().oracle,
        problems::dis_problem().oracle,
    ];
    let mut decided = 0;
    for k in 0..games_n {
        let f = &problems[(k % problems.len() as u64) as usize];
        let rounds = 1 + s.below(8) as usize;
        let s1 = if k % 3 == 0 { games::constant(Side::I, w(&[1])) } else { games::random(Side::I, seed + 2 * k) };
        let s2 = match k % 4 {
            0 => games::echo(),
            1 => games::stall(Side::II),
            _ => games::random(Side::II, seed + 2 * k + 1),
        };
        let wrun = games::run_wadge(&s1, &s2, rounds);
        let wv = adjudicate_run(&wrun, &**f, usize::MAX);
        let lrun = games::run_lipschitz(&games::wadge_to_lipschitz(&s1), &games::wadge_to_lipschitz(&s2), rounds);
        let lv = adjudicate_run(&lrun, &*problems::word_lift(f.clone()), rounds);
        ensure!(wv == lv, "game {k} on {}: Wadge {wv:?} vs Lipschitz on f^w {lv:?}", f.name());

        let l1 = games::digit_random(Side::I, seed + k, 4);
        let l2 = if k % 2 == 0 { games::digit_echo() } else { games::digit_random(Side::II, seed + k + 7, 4) };
        let lrun = games::run_lipschitz(&l1, &l2, rounds * 2);
        let lv = adjudicate_run(&lrun, &**f, rounds * 2);
        let (_, gv) = games::run_gale_stewart(&l1, &l2, &*games::gs_payoff_from_problem(f.clone()), rounds * 2);
        ensure!(lv == gv, "game {k} on {}: Lipschitz {lv:?} vs Gale-Stewart {gv:?}", f.name());
        if wv != GameVerdict::UnknownAtDepth {
            decided += 1;
        }
    }
    Ok(format!("{histories} histories round trip; {games_n} game pairs agree ({decided} decided)"))
}
