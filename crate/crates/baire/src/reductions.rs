//! Weihrauch-reduction witnesses, their finitary verification, and the
//! witness compilers around the effective discontinuity theorem.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::expr::{ExprError, MachineExpr};
use crate::machine::{DigitMap, Machine};
use crate::name::Fuel;
use crate::nat::Nat;
use crate::problems::{ProblemBundle, SetRef, Verdict};
use crate::problems::Problem;
use crate::smn::{const_section_transformer, param_fixpoint, NameTransformer};
use crate::term::Term;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `H ∘ G ∘ K`
    Strong,
    /// `H⟨id, G ∘ K⟩`
    Plain,
}

/// A pair of computable machines witnessing `f ≤W g` (or `f ≤sW g`).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub h: Machine,
    pub k: Machine,
    pub flavor: Flavor,
}

/// On-disk form of a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessExpr {
    pub h: MachineExpr,
    pub k: MachineExpr,
    pub flavor: Flavor,
}

impl TryFrom<&Witness> for WitnessExpr {
    type Error = ExprError;
    fn try_from(w: &Witness) -> Result<Self, ExprError> {
        Ok(WitnessExpr {
            h: MachineExpr::try_from(&w.h)?,
            k: MachineExpr::try_from(&w.k)?,
            flavor: w.flavor,
        })
    }
}

impl TryFrom<&WitnessExpr> for Witness {
    type Error = ExprError;
    fn try_from(e: &WitnessExpr) -> Result<Self, ExprError> {
        Ok(Witness {
            h: Machine::try_from(&e.h)?,
            k: Machine::try_from(&e.k)?,
            flavor: e.flavor,
        })
    }
}

impl Witness {
    pub fn identity() -> Witness {
        Witness {
            h: Machine::identity(),
            k: Machine::identity(),
            flavor: Flavor::Strong,
        }
    }
}

/// The candidate realizer of `f` obtained from a realizer `g` of `g`.
pub fn apply_witness(wit: &Witness, g: &Machine) -> Machine {
    let gk = Machine::compose(g.clone(), wit.k.clone());
    match wit.flavor {
        Flavor::Strong => Machine::compose(wit.h.clone(), gk),
        Flavor::Plain => Machine::compose(wit.h.clone(), Machine::pair(Machine::identity(), gk)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub sample: u64,
    pub input: Word,
    pub output: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub problem: String,
    pub target: String,
    pub samples: u64,
    pub depth: u64,
    pub fuel: Fuel,
    pub accept: u64,
    pub unknown: u64,
    pub reject: u64,
    /// Inputs discarded because `dom_adj` rejected them.
    pub discarded: u64,
    pub first_refutation: Option<Refutation>,
}

impl Report {
    pub fn refuted(&self) -> bool {
        self.reject > 0
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("problem `{0}` carries no realizer")]
    NoRealizer(String),
}

/// Uniform words of length `depth` over `{0, …, alphabet-1}`.
pub fn sample_inputs(seed: u64, depth: usize, alphabet: u64) -> impl Iterator<Item = Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || (0..depth).map(|_| Nat::small(rng.gen_range(0..alphabet))).collect())
}

/// Checks `apply_witness(wit, g.realizer)` against `f` on `samples` inputs
/// accepted-or-unknown by `f.dom_adj`. A single `Reject` refutes the witness.
pub fn verify_reduction(
    f: &dyn Problem,
    g: &ProblemBundle,
    wit: &Witness,
    samples: u64,
    depth: u64,
    fuel: Fuel,
    seed: u64,
) -> Result<Report, VerifyError> {
    verify_reduction_on(f, g, wit, sample_inputs(seed, depth as usize, 4), samples, depth, fuel)
}

/// As [`verify_reduction`], drawing inputs from `inputs`.
pub fn verify_reduction_on(
    f: &dyn Problem,
    g: &ProblemBundle,
    wit: &Witness,
    inputs: impl Iterator<Item = Word>,
    samples: u64,
    depth: u64,
    fuel: Fuel,
) -> Result<Report, VerifyError> {
    let realizer = g.realizer.as_ref().ok_or_else(|| VerifyError::NoRealizer(g.name()))?;
    let m = apply_witness(wit, realizer);
    let mut report = Report {
        problem: f.name(),
        target: g.name(),
        samples: 0,
        depth,
        fuel,
        accept: 0,
        unknown: 0,
        reject: 0,
        discarded: 0,
        first_refutation: None,
    };
    // rejection sampling is bounded so that a problem with tiny domain ends
    let budget = samples.saturating_mul(16).max(16);
    for u in inputs.take(budget as usize) {
        if report.samples == samples {
            break;
        }
        let u = u.take(depth as usize);
        if f.dom_adj(&u) == Verdict::Reject {
            report.discarded += 1;
            continue;
        }
        let v = m.apply_term(&Term::word(u.clone()), fuel.0).take(depth as usize);
        match f.graph_adj(&u, &v) {
            Verdict::Accept => report.accept += 1,
            Verdict::Unknown => report.unknown += 1,
            Verdict::Reject => {
                report.reject += 1;
                if report.first_refutation.is_none() {
                    report.first_refutation = Some(Refutation {
                        sample: report.samples,
                        input: u,
                        output: v,
                    });
                }
            }
        }
        report.samples += 1;
    }
    Ok(report)
}

/// `DIS ≤sW f` from a discontinuity function `D` of `f`: `K = D ∘ R` with
/// `U⟨R(p), q⟩ = U(p)`, and `H = id`.
pub fn disc_to_dis_reduction(d: &NameTransformer) -> Witness {
    Witness {
        h: Machine::identity(),
        k: Machine::compose(d.machine().clone(), const_section_transformer().machine().clone()),
        flavor: Flavor::Strong,
    }
}

/// A discontinuity function `D = K ∘ R` for `f` from a witness of
/// `DIS ≤W f`, where `U R(q) = H⟨R(q), U⟨q, K R(q)⟩⟩` (or `H U⟨q, K R(q)⟩`
/// for the strong flavor).
pub fn reduction_to_disc(wit: &Witness) -> NameTransformer {
    let inner = Machine::compose(
        Machine::universal(),
        Machine::pair(Machine::even(), Machine::compose(wit.k.clone(), Machine::odd())),
    );
    let f = match wit.flavor {
        Flavor::Strong => Machine::compose(wit.h.clone(), inner),
        Flavor::Plain => Machine::compose(wit.h.clone(), Machine::pair(Machine::odd(), inner)),
    };
    let r = param_fixpoint(&f);
    NameTransformer::new("reduction_to_disc", Machine::compose(wit.k.clone(), r.machine().clone()))
}

/// `DIS ≤sW LPO`: `K(p)` is `U(p)` padded with zeros whenever no new digit
/// is certified, and `H` turns the answer `b` into `b b b …`.
pub fn dis_to_lpo() -> Witness {
    Witness {
        h: Machine::hold_first(),
        k: Machine::pad(Machine::universal(), 0),
        flavor: Flavor::Strong,
    }
}

#[derive(Debug, thiserror::Error)]
#[error("sampled first digit {n}: A says {a:?} but B says {b:?} at h(n)")]
pub struct NotManyOne {
    pub n: u64,
    pub a: Verdict,
    pub b: Verdict,
}

/// `χ_A ≤sW χ_B` from a many-one reduction `h` of `A` to `B`, with the
/// natural numbers coded by the first digit. The condition `A = h⁻¹(B)` is
/// checked on first digits below 64.
pub fn many_one_to_sw(h: &DigitMap, a: &SetRef, b: &SetRef) -> Result<Witness, NotManyOne> {
    for n in 0..64 {
        let va = a.adj(&Word::from_digits(&[n]));
        let vb = b.adj(&Word::from(vec![h.apply(&Nat::small(n))]));
        if va != Verdict::Unknown && vb != Verdict::Unknown && va != vb {
            return Err(NotManyOne { n, a: va, b: vb });
        }
    }
    Ok(Witness {
        h: Machine::identity(),
        k: Machine::map(h.clone()),
        flavor: Flavor::Strong,
    })
}

/// `D = R_Δ ∘ G` with `G` the Sierpiński totalizer.
pub fn delta_realizer_to_disc(_a: &SetRef, r_delta: &Machine) -> NameTransformer {
    let g = Machine::smn(Machine::latch(Machine::universal()));
    NameTransformer::new("delta_realizer_to_disc", Machine::compose(r_delta.clone(), g))
}

/// A discontinuity function of `χ_A` is itself a realizer of `Δ_A`.
pub fn disc_to_delta_realizer(_a: &SetRef, d: &NameTransformer) -> Machine {
    d.machine().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{id_problem, lpo_problem, dis_problem};

    fn w(d: &[u64]) -> Word {
        Word::from_digits(d)
    }

    #[test]
    fn identity_witness_is_g() {
        let g = Machine::prepend(w(&[4]));
        let m = apply_witness(&Witness::identity(), &g);
        for u in sample_inputs(1, 6, 4).take(100) {
            assert_eq!(m.apply_word(&u), g.apply_word(&u));
        }
    }

    #[test]
    fn plain_flavor_expands() {
        let wit = Witness {
            h: Machine::odd(),
            k: Machine::identity(),
            flavor: Flavor::Plain,
        };
        // H reads the second component of ⟨u, G K u⟩ exactly
        let m = apply_witness(&wit, &Machine::prepend(w(&[9])));
        assert_eq!(m.apply_word(&w(&[1, 2])), w(&[9, 1, 2]));
    }

    #[test]
    fn constant_h_gives_constant() {
        let wit = Witness {
            h: Machine::constant(w(&[5])),
            k: Machine::identity(),
            flavor: Flavor::Strong,
        };
        let m = apply_witness(&wit, &Machine::identity());
        assert_eq!(m.apply_word(&w(&[1, 2, 3])), w(&[5]));
    }

    #[test]
    fn id_reduces_to_id() {
        let id = id_problem();
        let r = verify_reduction(&*id.oracle, &id, &Witness::identity(), 1000, 16, Fuel(1024), 7).unwrap();
        assert_eq!(r.reject, 0);
        assert_eq!(r.samples, 1000);
    }

    #[test]
    fn corrupted_witness_is_refuted_at_depth_one() {
        let id = id_problem();
        let wit = Witness {
            h: Machine::prepend(w(&[1])),
            k: Machine::identity(),
            flavor: Flavor::Strong,
        };
        let r = verify_reduction(&*id.oracle, &id, &wit, 100, 16, Fuel(1024), 7).unwrap();
        assert!(r.refuted());
        let first = r.first_refutation.unwrap();
        assert!(first.input[0] != 1 || first.input.iter().zip(first.output.iter()).any(|(a, b)| a != b));
    }

    #[test]
    fn dis_reduces_to_lpo() {
        let r = verify_reduction(&*dis_problem().oracle, &lpo_problem(), &dis_to_lpo(), 1000, 16, Fuel(1024), 3).unwrap();
        assert_eq!(r.reject, 0);
    }

    #[test]
    fn witness_round_trips_through_json() {
        let wit = dis_to_lpo();
        let e = WitnessExpr::try_from(&wit).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        let back: WitnessExpr = serde_json::from_str(&s).unwrap();
        assert_eq!(Witness::try_from(&back).unwrap(), wit);
    }
}
