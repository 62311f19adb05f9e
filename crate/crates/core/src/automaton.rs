//! Online suffix automaton over integer letters.
//!
//! Every non-initial state `v` represents the right-equivalence class of
//! factors whose lengths lie in `(len(link(v)), len(v)]`, so summing those
//! spans counts distinct non-empty factors, and spreading them over a
//! difference array gives the full subword-complexity profile in one pass.

use std::collections::HashMap;

const NO_LINK: u32 = u32::MAX;
const SPARSE_LIMIT: usize = 8;

#[derive(Clone, Debug)]
enum Transitions {
    Sparse(Vec<(u32, u32)>),
    Dense(HashMap<u32, u32>),
}

impl Default for Transitions {
    fn default() -> Self {
        Transitions::Sparse(Vec::new())
    }
}

impl Transitions {
    fn get(&self, letter: u32) -> Option<u32> {
        match self {
            Transitions::Sparse(items) => items
                .iter()
                .find_map(|&(c, target)| (c == letter).then_some(target)),
            Transitions::Dense(map) => map.get(&letter).copied(),
        }
    }

    fn set(&mut self, letter: u32, target: u32) {
        match self {
            Transitions::Sparse(items) => {
                if let Some(slot) = items.iter_mut().find(|(c, _)| *c == letter) {
                    slot.1 = target;
                } else if items.len() < SPARSE_LIMIT {
                    items.push((letter, target));
                } else {
                    let mut map: HashMap<u32, u32> = items.iter().copied().collect();
                    map.insert(letter, target);
                    *self = Transitions::Dense(map);
                }
            }
            Transitions::Dense(map) => {
                map.insert(letter, target);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct State {
    len: u32,
    link: u32,
    next: Transitions,
}

/// Suffix automaton (DAWG) of a word, built letter by letter.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: u32,
    word_len: usize,
}

impl Default for SuffixAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl SuffixAutomaton {
    pub fn new() -> Self {
        SuffixAutomaton {
            states: vec![State {
                len: 0,
                link: NO_LINK,
                next: Transitions::default(),
            }],
            last: 0,
            word_len: 0,
        }
    }

    pub fn build(letters: &[u32]) -> Self {
        let mut sam = SuffixAutomaton::new();
        sam.states.reserve(2 * letters.len());
        for &c in letters {
            sam.extend(c);
        }
        sam
    }

    /// Appends one letter to the represented word.
    pub fn extend(&mut self, letter: u32) {
        assert!(
            self.word_len < u32::MAX as usize - 1,
            "suffix automaton supports words shorter than 2^32 - 1"
        );
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[self.last as usize].len + 1,
            link: NO_LINK,
            next: Transitions::default(),
        });
        self.word_len += 1;

        let mut p = self.last;
        while p != NO_LINK && self.states[p as usize].next.get(letter).is_none() {
            self.states[p as usize].next.set(letter, cur);
            p = self.states[p as usize].link;
        }

        if p == NO_LINK {
            self.states[cur as usize].link = 0;
        } else {
            let q = self.states[p as usize].next.get(letter).unwrap();
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cloned = self.states[q as usize].clone();
                cloned.len = self.states[p as usize].len + 1;
                self.states.push(cloned);
                while p != NO_LINK && self.states[p as usize].next.get(letter) == Some(q) {
                    self.states[p as usize].next.set(letter, clone);
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Number of distinct non-empty factors.
    pub fn distinct_nonempty_factors(&self) -> u64 {
        self.states
            .iter()
            .skip(1)
            .map(|s| u64::from(s.len - self.states[s.link as usize].len))
            .sum()
    }

    /// `counts[n]` = number of distinct factors of length `n`, for `n` in `0..=len`.
    pub fn factor_counts(&self) -> Vec<usize> {
        let l = self.word_len;
        let mut diff = vec![0i64; l + 2];
        for s in self.states.iter().skip(1) {
            let lo = self.states[s.link as usize].len as usize + 1;
            let hi = s.len as usize;
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
        let mut counts = Vec::with_capacity(l + 1);
        counts.push(1);
        let mut running = 0i64;
        for d in diff.iter().take(l + 1).skip(1) {
            running += d;
            counts.push(running as usize);
        }
        counts
    }

    /// True iff `pattern` is a factor of the represented word.
    pub fn contains(&self, pattern: &[u32]) -> bool {
        let mut state = 0u32;
        for &c in pattern {
            match self.states[state as usize].next.get(c) {
                Some(t) => state = t,
                None => return false,
            }
        }
        true
    }
}
