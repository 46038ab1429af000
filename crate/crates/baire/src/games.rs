//! Wadge, Lipschitz and Gale-Stewart games, and the compilers between
//! strategies, realizers and discontinuity functions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::machine::Machine;
use crate::name::eval_words;
use crate::nat::{mix, Nat};
use crate::problems::{totalize, Problem, ProblemOracle, SetOracle, SetRef, Verdict};
use crate::smn::NameTransformer;
use crate::word::{even_word, interleave_words, odd_word, word_code, word_decode, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    I,
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameVerdict {
    I,
    II,
    UnknownAtDepth,
}

type WordMove = dyn Fn(&[Word]) -> Word + Send + Sync;
type DigitMove = dyn Fn(&[Nat]) -> Nat + Send + Sync;

/// A word-valued strategy. Player II answers `x_0, …, x_i` with `y_i`;
/// player I answers `y_0, …, y_{i-1}` with `x_i`.
#[derive(Clone)]
pub struct WadgeStrategy {
    pub side: Side,
    pub label: String,
    mv: Arc<WordMove>,
}

impl WadgeStrategy {
    pub fn new(side: Side, label: impl Into<String>, f: impl Fn(&[Word]) -> Word + Send + Sync + 'static) -> Self {
        WadgeStrategy {
            side,
            label: label.into(),
            mv: Arc::new(f),
        }
    }

    pub fn play(&self, history: &[Word]) -> Word {
        (self.mv)(history)
    }
}

impl fmt::Debug for WadgeStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WadgeStrategy({:?}, {})", self.side, self.label)
    }
}

/// A digit-valued strategy for Lipschitz and Gale-Stewart games.
#[derive(Clone)]
pub struct LipschitzStrategy {
    pub side: Side,
    pub label: String,
    mv: Arc<DigitMove>,
}

impl LipschitzStrategy {
    pub fn new(side: Side, label: impl Into<String>, f: impl Fn(&[Nat]) -> Nat + Send + Sync + 'static) -> Self {
        LipschitzStrategy {
            side,
            label: label.into(),
            mv: Arc::new(f),
        }
    }

    pub fn play(&self, history: &[Nat]) -> Nat {
        (self.mv)(history)
    }
}

impl fmt::Debug for LipschitzStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LipschitzStrategy({:?}, {})", self.side, self.label)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub x_moves: Vec<Word>,
    pub y_moves: Vec<Word>,
}

impl Run {
    pub fn x(&self) -> Word {
        concat(&self.x_moves)
    }
    pub fn y(&self) -> Word {
        concat(&self.y_moves)
    }
    pub fn rounds(&self) -> usize {
        self.y_moves.len()
    }
}

fn concat(ws: &[Word]) -> Word {
    let mut out = Word::empty();
    for w in ws {
        out.extend_from(w);
    }
    out
}

pub fn run_wadge(s1: &WadgeStrategy, s2: &WadgeStrategy, rounds: usize) -> Run {
    let mut run = Run::default();
    for _ in 0..rounds {
        let x = s1.play(&run.y_moves);
        run.x_moves.push(x);
        let y = s2.play(&run.x_moves);
        run.y_moves.push(y);
    }
    run
}

fn adjudicate(f: &dyn Problem, x: &Word, y: &Word) -> GameVerdict {
    let dom = f.dom_adj(x);
    let graph = f.graph_adj(x, y);
    if graph == Verdict::Accept || dom == Verdict::Reject {
        GameVerdict::II
    } else if graph == Verdict::Reject && dom == Verdict::Accept {
        GameVerdict::I
    } else {
        GameVerdict::UnknownAtDepth
    }
}

/// II wins if `(x, y) ∈ graph(f)` or `x ∉ dom(f)`; only certified evidence
/// from the first `depth` digits of either side decides.
pub fn adjudicate_run(run: &Run, f: &dyn Problem, depth: usize) -> GameVerdict {
    adjudicate(f, &run.x().take(depth), &run.y().take(depth))
}

/// `v_0 … v_i = h(x_0 … x_i)`
pub fn realizer_to_strategy_ii(h: &Machine) -> WadgeStrategy {
    let h = h.clone();
    WadgeStrategy::new(Side::II, format!("realizer:{h:?}"), move |xs| {
        let (last, before) = xs.split_last().expect("II moves after I");
        let prev = if before.is_empty() { Word::empty() } else { h.apply_word(&concat(before)) };
        let mut all = concat(before);
        all.extend_from(last);
        let cur = h.apply_word(&all);
        cur[prev.len().min(cur.len())..].iter().cloned().collect()
    })
}

/// `h(a_0 … a_i) = σ(a_0) σ(a_0, a_1) … σ(a_0, …, a_i)`, feeding I's moves
/// one digit at a time.
pub fn strategy_ii_to_realizer(s: &WadgeStrategy) -> Machine {
    let s = s.clone();
    Machine::host(&format!("strategy:{}", s.label), move |u| {
        let mut out = Word::empty();
        let mut hist = Vec::with_capacity(u.len());
        for d in u.iter() {
            hist.push(Word::from(vec![d.clone()]));
            out.extend_from(&s.play(&hist));
        }
        out
    })
}

/// The name built from a run's history: pair `j` is
/// `⟨code(x_0…x_j), code(y_0…y_j)⟩`.
pub fn history_name(xs: &[Word], ys: &[Word]) -> Word {
    let mut cx = Word::empty();
    let mut cy = Word::empty();
    xs.iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            cx.extend_from(x);
            cy.extend_from(y);
            Nat::pair(&word_code(&cx), &word_code(&cy))
        })
        .collect()
}

/// Player I from (an approximation `h` of) a discontinuity function:
/// `x_0 … x_i = h(p)` where `p` lists the history as graph pairs.
pub fn disc_to_strategy_i(h: &Machine) -> WadgeStrategy {
    let h = h.clone();
    // I's moves so far, keyed by the opponent history they answer
    let memo: Mutex<HashMap<Vec<Word>, Vec<Word>>> = Mutex::new(HashMap::new());
    WadgeStrategy::new(Side::I, format!("disc:{h:?}"), move |ys| {
        let mut xs = {
            let memo = memo.lock().unwrap();
            (0..=ys.len()).rev().find_map(|k| memo.get(&ys[..k]).cloned()).unwrap_or_default()
        };
        let mut played: Word = xs.iter().flat_map(|x| x.iter().cloned()).collect();
        for i in xs.len()..=ys.len() {
            let p = history_name(&xs, &ys[..i]);
            let cur = h.apply_word(&p);
            let next: Word = if played.is_prefix_of(&cur) {
                cur[played.len()..].iter().cloned().collect()
            } else {
                Word::empty()
            };
            played.extend_from(&next);
            xs.push(next);
            memo.lock().unwrap().insert(ys[..i].to_vec(), xs.clone());
        }
        xs[ys.len()].clone()
    })
}

/// `D(p) = x_0 x_1 …` where `x_i = σ(y_0, …, y_{i-1})` and
/// `y_0 … y_i = h(x_0 … x_i)` with `h(u)` the certified output of `Φ_p(u)`
/// at fuel `|u|`. Round `i` is played only once `p` is known to `|x_0…x_i|`.
pub fn strategy_i_to_disc(s: &WadgeStrategy) -> NameTransformer {
    let s = s.clone();
    let label = format!("strategy_i_to_disc:{}", s.label);
    let m = Machine::host(&label, move |p| strategy_i_output(&s, p));
    NameTransformer::new(label, m)
}

fn strategy_i_output(s: &WadgeStrategy, p: &Word) -> Word {
    let mut ys: Vec<Word> = Vec::new();
    let mut x = Word::empty();
    let mut y = Word::empty();
    for _ in 0..=p.len() {
        let xi = s.play(&ys);
        x.extend_from(&xi);
        if x.len() > p.len() {
            break;
        }
        let out = eval_words(&p[..x.len()], &x).output;
        let yi: Word = if y.is_prefix_of(&out) {
            out[y.len()..].iter().cloned().collect()
        } else {
            Word::empty()
        };
        y.extend_from(&yi);
        ys.push(yi);
    }
    x
}

/// `λ(n_0, …, n_k) = code(σ(w_{n_0}, …, w_{n_k}))`
pub fn wadge_to_lipschitz(s: &WadgeStrategy) -> LipschitzStrategy {
    let s = s.clone();
    LipschitzStrategy::new(s.side, format!("lipschitz({})", s.label), move |ns| {
        let ws: Vec<Word> = ns.iter().map(word_decode).collect();
        word_code(&s.play(&ws))
    })
}

/// `σ(w_0, …, w_k) = w_{λ(code w_0, …, code w_k)}`
pub fn lipschitz_to_wadge(l: &LipschitzStrategy) -> WadgeStrategy {
    let l = l.clone();
    WadgeStrategy::new(l.side, format!("wadge({})", l.label), move |ws| {
        let ns: Vec<Nat> = ws.iter().map(|w| word_code(w)).collect();
        word_decode(&l.play(&ns))
    })
}

struct Payoff(ProblemOracle);

impl SetOracle for Payoff {
    fn label(&self) -> String {
        format!("payoff({})", self.0.name())
    }
    fn adj(&self, r: &Word) -> Verdict {
        self.0.graph_adj(&even_word(r), &odd_word(r))
    }
}

/// The Gale-Stewart payoff set `graph(Tf)` on interleaved runs.
pub fn gs_payoff_from_problem(f: ProblemOracle) -> SetRef {
    Arc::new(Payoff(totalize(f)))
}

pub fn run_lipschitz(l1: &LipschitzStrategy, l2: &LipschitzStrategy, rounds: usize) -> Run {
    let mut xs: Vec<Nat> = Vec::new();
    let mut ys: Vec<Nat> = Vec::new();
    for _ in 0..rounds {
        xs.push(l1.play(&ys));
        ys.push(l2.play(&xs));
    }
    Run {
        x_moves: xs.into_iter().map(|d| Word::from(vec![d])).collect(),
        y_moves: ys.into_iter().map(|d| Word::from(vec![d])).collect(),
    }
}

pub fn run_gale_stewart(l1: &LipschitzStrategy, l2: &LipschitzStrategy, a: &dyn SetOracle, rounds: usize) -> (Run, GameVerdict) {
    let run = run_lipschitz(l1, l2, rounds);
    let r = interleave_words(&run.x(), &run.y());
    let v = match a.adj(&r) {
        Verdict::Accept => GameVerdict::II,
        Verdict::Reject => GameVerdict::I,
        Verdict::Unknown => GameVerdict::UnknownAtDepth,
    };
    (run, v)
}

/// II copies I's last move.
pub fn echo() -> WadgeStrategy {
    WadgeStrategy::new(Side::II, "echo", |xs| xs.last().cloned().unwrap_or_default())
}

pub fn constant(side: Side, w: Word) -> WadgeStrategy {
    WadgeStrategy::new(side, format!("constant{w}"), move |_| w.clone())
}

/// Always plays the empty word.
pub fn stall(side: Side) -> WadgeStrategy {
    WadgeStrategy::new(side, "stall", |_| Word::empty())
}

/// Uniform words of length at most 3 over `{0, …, 3}`, a deterministic
/// function of the seed and the history.
pub fn random(side: Side, seed: u64) -> WadgeStrategy {
    WadgeStrategy::new(side, format!("random:{seed}"), move |hist| {
        let h = hist
            .iter()
            .fold(mix(seed, hist.len() as u64), |h, w| w.iter().fold(mix(h, w.len() as u64), |h, d| mix(h, d.hash64())));
        let mut rng = ChaCha8Rng::seed_from_u64(h);
        let n = rng.gen_range(0..=3);
        (0..n).map(|_| Nat::small(rng.gen_range(0..4))).collect()
    })
}

pub fn digit_constant(side: Side, d: u64) -> LipschitzStrategy {
    LipschitzStrategy::new(side, format!("digit:{d}"), move |_| Nat::small(d))
}

pub fn digit_echo() -> LipschitzStrategy {
    LipschitzStrategy::new(Side::II, "digit_echo", |xs| xs.last().cloned().unwrap_or_default())
}

pub fn digit_random(side: Side, seed: u64, alphabet: u64) -> LipschitzStrategy {
    LipschitzStrategy::new(side, format!("digit_random:{seed}"), move |hist| {
        let h = hist.iter().fold(mix(seed, hist.len() as u64), |h, d| mix(h, d.hash64()));
        Nat::small(ChaCha8Rng::seed_from_u64(h).gen_range(0..alphabet))
    })
}
