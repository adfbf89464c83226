//! Whitehead automorphisms and peak reduction.
//!
//! Primitivity of a word and the free-factor property of a subgroup are both
//! decided the same way: descend greedily along length-reducing Whitehead
//! moves, then, at the local minimum, exhaust the set of states of the same
//! length reachable by moves. By peak reduction a non-minimal state always
//! has a strictly reducing move, so the minimum reached is global.
//!
//! For a word the length is its cyclic length. For a subgroup it is the
//! number of edges of the core graph of its conjugacy class, and the
//! subgroup is a free factor exactly when that minimum equals its rank
//! (the core graph is then a rose of basis letters).

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::word::{cyclically_reduce, CyclicWord, Letter, Word};

/// Default bound on the number of same-length states explored.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Image of a non-multiplier generator `x` under a multiplier move by `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    /// x ↦ x
    Fix,
    /// x ↦ x m
    Right,
    /// x ↦ m⁻¹ x
    Left,
    /// x ↦ m⁻¹ x m
    Both,
}

const ACTIONS: [Action; 4] = [Action::Fix, Action::Right, Action::Left, Action::Both];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Generator `i` goes to the letter `images[i]`.
    Permutation(Vec<Letter>),
    Multiplier {
        multiplier: Letter,
        /// One entry per generator; the multiplier's own entry is `Fix`.
        actions: Vec<Action>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiteheadMove {
    kind: MoveKind,
    images: Vec<Word>,
}

impl WhiteheadMove {
    pub fn permutation(images: Vec<Letter>) -> Self {
        let words = images.iter().map(|&l| Word::letter(l)).collect();
        WhiteheadMove {
            kind: MoveKind::Permutation(images),
            images: words,
        }
    }

    pub fn multiplier(multiplier: Letter, actions: Vec<Action>) -> Self {
        let m = Word::letter(multiplier);
        let m_inv = m.inverse();
        let images = actions
            .iter()
            .enumerate()
            .map(|(i, action)| {
                let x = Word::generator(i);
                if i == multiplier.generator() {
                    return x;
                }
                match action {
                    Action::Fix => x,
                    Action::Right => &x * &m,
                    Action::Left => &m_inv * &x,
                    Action::Both => &(&m_inv * &x) * &m,
                }
            })
            .collect();
        WhiteheadMove {
            kind: MoveKind::Multiplier {
                multiplier,
                actions,
            },
            images,
        }
    }

    pub fn kind(&self) -> &MoveKind {
        &self.kind
    }

    /// Generator images; together they define the automorphism.
    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn inverse(&self) -> WhiteheadMove {
        match &self.kind {
            MoveKind::Permutation(images) => {
                let mut inv = vec![Letter::new(0, false); images.len()];
                for (i, l) in images.iter().enumerate() {
                    inv[l.generator()] = Letter::new(i, l.is_inverse());
                }
                WhiteheadMove::permutation(inv)
            }
            MoveKind::Multiplier {
                multiplier,
                actions,
            } => WhiteheadMove::multiplier(multiplier.inverse(), actions.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i))
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let maps: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, w)| **w != Word::generator(*i))
            .map(|(i, w)| format!("{} -> {}", alphabet.name(i), alphabet.format(w)))
            .collect();
        let tag = match self.kind {
            MoveKind::Permutation(_) => "I",
            MoveKind::Multiplier { .. } => "II",
        };
        if maps.is_empty() {
            format!("[{tag}] identity")
        } else {
            format!("[{tag}] {}", maps.join(", "))
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Number of type-II (multiplier) moves in rank `n`: `2n (4^(n-1) - 1)`.
pub fn multiplier_move_count(rank: usize) -> usize {
    2 * rank * (4usize.pow(rank as u32 - 1) - 1)
}

/// Number of type-I (signed permutation) moves in rank `n`: `2^n n!`.
pub fn permutation_move_count(rank: usize) -> usize {
    (1..=rank).product::<usize>() << rank
}

/// All Whitehead moves: signed permutations first (identity leading), then
/// the nontrivial multiplier moves ordered by multiplier letter.
pub fn whitehead_moves(alphabet: &Alphabet) -> Vec<WhiteheadMove> {
    moves_for_rank(alphabet.rank())
}

pub(crate) fn moves_for_rank(n: usize) -> Vec<WhiteheadMove> {
    let mut moves = Vec::new();
    for perm in permutations(n) {
        for signs in 0..1usize << n {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &p)| Letter::new(p, signs >> i & 1 == 1))
                .collect();
            moves.push(WhiteheadMove::permutation(images));
        }
    }
    for code in 0..2 * n {
        let m = Letter::from_code(code);
        let others: Vec<usize> = (0..n).filter(|&i| i != m.generator()).collect();
        for choice in 1..4usize.pow(others.len() as u32) {
            let mut actions = vec![Action::Fix; n];
            let mut c = choice;
            for &i in &others {
                actions[i] = ACTIONS[c % 4];
                c /= 4;
            }
            moves.push(WhiteheadMove::multiplier(m, actions));
        }
    }
    moves
}

/// Moves applied during a descent, with the measure after each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizationTrace {
    pub initial: Vec<Word>,
    pub final_words: Vec<Word>,
    pub moves: Vec<WhiteheadMove>,
    /// `lengths[0]` is the initial measure, `lengths[i + 1]` follows `moves[i]`.
    pub lengths: Vec<usize>,
}

impl MinimizationTrace {
    pub fn final_length(&self) -> usize {
        *self.lengths.last().unwrap_or(&0)
    }

    /// Replays the moves on the initial tuple.
    pub fn replay(&self) -> Vec<Word> {
        self.moves.iter().fold(self.initial.clone(), |ws, m| {
            ws.iter().map(|w| m.apply(w)).collect()
        })
    }
}

fn cyclic_length(w: &Word) -> usize {
    cyclically_reduce(w).0.len()
}

fn total_cyclic_length(ws: &[Word]) -> usize {
    ws.iter().map(cyclic_length).sum()
}

fn apply_all(m: &WhiteheadMove, ws: &[Word]) -> Vec<Word> {
    ws.iter().map(|w| m.apply(w)).collect()
}

/// Strictly-decreasing greedy descent: at each step takes the move with the
/// smallest resulting measure, the earliest such move on ties.
fn descend<S, M>(
    start: S,
    moves: &[WhiteheadMove],
    act: impl Fn(&WhiteheadMove, &S) -> S,
    measure: M,
    trace: &mut Vec<(WhiteheadMove, usize)>,
) -> (S, usize)
where
    M: Fn(&S) -> usize,
{
    let mut state = start;
    let mut current = measure(&state);
    loop {
        let mut best: Option<(usize, S, usize)> = None;
        for (i, m) in moves.iter().enumerate() {
            let next = act(m, &state);
            let len = measure(&next);
            if len < current && best.as_ref().is_none_or(|b| len < b.2) {
                best = Some((i, next, len));
            }
        }
        match best {
            Some((i, next, len)) => {
                trace.push((moves[i].clone(), len));
                state = next;
                current = len;
            }
            None => return (state, current),
        }
    }
}

/// Greedy minimization of the total cyclic length of a tuple.
pub fn minimize_tuple(words: &[Word], alphabet: &Alphabet) -> MinimizationTrace {
    let moves = whitehead_moves(alphabet);
    let mut steps = Vec::new();
    let (final_words, _) = descend(
        words.to_vec(),
        &moves,
        |m, ws| apply_all(m, ws),
        |ws| total_cyclic_length(ws),
        &mut steps,
    );
    let mut lengths = vec![total_cyclic_length(words)];
    lengths.extend(steps.iter().map(|(_, l)| *l));
    MinimizationTrace {
        initial: words.to_vec(),
        final_words,
        moves: steps.into_iter().map(|(m, _)| m).collect(),
        lengths,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    True,
    False,
    /// The same-length orbit exceeded the visited-set cap.
    Inconclusive,
}

impl Decision {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Decision::True => Some(true),
            Decision::False => Some(false),
            Decision::Inconclusive => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub decision: Decision,
    /// Minimal measure reached.
    pub minimal_length: usize,
    /// Size of the same-length orbit explored at the minimum.
    pub visited: usize,
    pub cap_reached: bool,
    pub trace: MinimizationTrace,
}

/// Descent followed by exhaustive search of the same-length orbit.
///
/// If the orbit search meets a state with a shorter image, descent resumes
/// from there; peak reduction says this never happens, but the search does
/// not rely on it.
#[allow(clippy::too_many_arguments)]
fn peak_search<S, K>(
    initial: Vec<Word>,
    start: S,
    moves: &[WhiteheadMove],
    act: impl Fn(&WhiteheadMove, &S) -> S,
    measure: impl Fn(&S) -> usize,
    key: impl Fn(&S) -> K,
    words_of: impl Fn(&S) -> Vec<Word>,
    target: usize,
    cap: usize,
) -> SearchOutcome
where
    S: Clone,
    K: Hash + Eq,
{
    let mut steps: Vec<(WhiteheadMove, usize)> = Vec::new();
    let initial_measure = measure(&start);
    let mut state = start;
    let finish = |state: &S, steps: Vec<(WhiteheadMove, usize)>, decision, visited, cap_reached| {
        let mut lengths = vec![initial_measure];
        lengths.extend(steps.iter().map(|(_, l)| *l));
        SearchOutcome {
            decision,
            minimal_length: *lengths.last().unwrap(),
            visited,
            cap_reached,
            trace: MinimizationTrace {
                initial: initial.clone(),
                final_words: words_of(state),
                moves: steps.into_iter().map(|(m, _)| m).collect(),
                lengths,
            },
        }
    };
    'outer: loop {
        let (low, level) = descend(state, moves, &act, &measure, &mut steps);
        state = low;
        if level <= target {
            return finish(&state, steps, Decision::True, 0, false);
        }
        // Breadth-first search of the level set, with parent links for replay.
        let mut nodes: Vec<(S, Option<(usize, usize)>)> = vec![(state.clone(), None)];
        let mut seen: HashMap<K, usize> = HashMap::new();
        seen.insert(key(&state), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (mi, m) in moves.iter().enumerate() {
                let next = act(m, &nodes[i].0);
                let len = measure(&next);
                if len < level {
                    // Replay the path to node i, then the reducing move.
                    let mut path = vec![mi];
                    let mut j = i;
                    while let Some((parent, via)) = nodes[j].1 {
                        path.push(via);
                        j = parent;
                    }
                    for &via in path.iter().rev() {
                        state = act(&moves[via], &state);
                        steps.push((moves[via].clone(), measure(&state)));
                    }
                    continue 'outer;
                }
                if len == level {
                    let k = key(&next);
                    if !seen.contains_key(&k) {
                        if seen.len() >= cap {
                            let visited = seen.len();
                            return finish(&state, steps, Decision::Inconclusive, visited, true);
                        }
                        seen.insert(k, nodes.len());
                        nodes.push((next, Some((i, mi))));
                        queue.push_back(nodes.len() - 1);
                    }
                }
            }
        }
        let visited = seen.len();
        return finish(&state, steps, Decision::False, visited, false);
    }
}

/// Whitehead's test for a single word, with an explicit orbit cap.
pub fn primitivity_search(w: &Word, alphabet: &Alphabet, cap: usize) -> Result<SearchOutcome> {
    if w.is_empty() {
        return Err(Error::Domain(
            "the trivial word is not primitive or imprimitive".into(),
        ));
    }
    check_alphabet(std::slice::from_ref(w), alphabet)?;
    let moves = whitehead_moves(alphabet);
    let core = cyclically_reduce(w).0;
    Ok(peak_search(
        vec![w.clone()],
        core,
        &moves,
        |m, s| cyclically_reduce(&m.apply(s)).0,
        |s| s.len(),
        CyclicWord::new,
        |s| vec![s.clone()],
        1,
        cap,
    ))
}

/// Whether `w` belongs to some basis of the free group on `alphabet`.
pub fn is_primitive(w: &Word, alphabet: &Alphabet) -> Result<Decision> {
    primitivity_search(w, alphabet, DEFAULT_CAP).map(|o| o.decision)
}

fn check_alphabet(words: &[Word], alphabet: &Alphabet) -> Result<()> {
    if words
        .iter()
        .any(|w| w.max_generator().is_some_and(|g| g >= alphabet.rank()))
    {
        return Err(Error::AlphabetMismatch(format!(
            "word uses generator outside alphabet of rank {}",
            alphabet.rank()
        )));
    }
    Ok(())
}

fn core_of(words: &[Word], rank: usize) -> SubgroupGraph {
    SubgroupGraph::build_unchecked(words, rank).cyclic_core()
}

/// Free-factor test for the subgroup with the given basis, with an explicit cap.
pub fn free_factor_search(
    basis: &[Word],
    alphabet: &Alphabet,
    cap: usize,
) -> Result<SearchOutcome> {
    check_alphabet(basis, alphabet)?;
    let graph = SubgroupGraph::build(basis, alphabet)?;
    if graph.rank() != basis.len() {
        return Err(Error::Precondition(format!(
            "the {} given words generate a subgroup of rank {}; not a basis",
            basis.len(),
            graph.rank()
        )));
    }
    let rank = alphabet.rank();
    let moves = whitehead_moves(alphabet);
    Ok(peak_search(
        basis.to_vec(),
        (basis.to_vec(), core_of(basis, rank)),
        &moves,
        |m, (ws, _)| {
            let next = apply_all(m, ws);
            let core = core_of(&next, rank);
            (next, core)
        },
        |(_, core)| core.edge_count(),
        |(_, core)| core.clone_adjacency(),
        |(ws, _)| ws.clone(),
        basis.len(),
        cap,
    ))
}

/// Whether the subgroup with the given basis is a free factor.
pub fn is_free_factor(basis: &[Word], alphabet: &Alphabet) -> Result<Decision> {
    free_factor_search(basis, alphabet, DEFAULT_CAP).map(|o| o.decision)
}
