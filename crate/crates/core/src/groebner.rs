//! Noncommutative Buchberger–Mora completion for path algebra ideals.
//!
//! Words are arrow sequences in traversal order over canonical arrow
//! ranks (arrows sorted by identifier), compared length-first and then
//! lexicographically. Every generator is parallel, so all words produced
//! by overlaps and reductions are genuine paths.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::error::{FcyError, Result};
use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Poly = BTreeMap<Word, Scalar>;

fn add_term(p: &mut Poly, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

fn make_monic(p: Poly) -> Poly {
    let inv = p
        .last_key_value()
        .expect("nonzero")
        .1
        .inv()
        .expect("nonzero");
    p.into_iter().map(|(w, c)| (w, &c * &inv)).collect()
}

/// A reduced-leading-word Gröbner basis.
#[derive(Clone, Debug, Default)]
pub struct GroebnerBasis {
    polys: Vec<Option<Poly>>,
    leads: HashMap<Vec<u32>, usize>,
    lead_lengths: BTreeMap<usize, usize>,
}

impl GroebnerBasis {
    fn lead(&self, i: usize) -> &[u32] {
        &self.polys[i]
            .as_ref()
            .unwrap()
            .last_key_value()
            .unwrap()
            .0
             .0
    }

    /// Position and generator of the first leading word occurring in `w`.
    fn find_divisor(&self, w: &[u32]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in self.lead_lengths.keys() {
                if start + len > w.len() {
                    break;
                }
                if let Some(&g) = self.leads.get(&w[start..start + len]) {
                    return Some((start, g));
                }
            }
        }
        None
    }

    /// Whether some leading word is a suffix of `w`.
    pub fn has_lead_suffix(&self, w: &[u32]) -> bool {
        self.lead_lengths
            .keys()
            .take_while(|&&l| l <= w.len())
            .any(|&l| self.leads.contains_key(&w[w.len() - l..]))
    }

    pub fn is_normal(&self, w: &[u32]) -> bool {
        self.find_divisor(w).is_none()
    }

    /// Full reduction to normal form.
    pub fn reduce(&self, mut p: Poly) -> Poly {
        let mut out = Poly::new();
        while let Some((w, c)) = p.pop_last() {
            match self.find_divisor(&w.0) {
                Some((pos, g)) => {
                    let g = self.polys[g].as_ref().unwrap();
                    let lead_len = g.last_key_value().unwrap().0 .0.len();
                    let left = &w.0[..pos];
                    let right = &w.0[pos + lead_len..];
                    for (u, d) in g.iter().rev().skip(1) {
                        let mut word = Vec::with_capacity(left.len() + u.0.len() + right.len());
                        word.extend_from_slice(left);
                        word.extend_from_slice(&u.0);
                        word.extend_from_slice(right);
                        add_term(&mut p, Word(word), -(&c * d));
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    pub fn leading_words(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self.leads.keys().cloned().collect();
        v.sort_by_key(|a| Word(a.clone()));
        v
    }

    pub fn len(&self) -> usize {
        self.leads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leads.is_empty()
    }

    fn remove(&mut self, i: usize) -> Poly {
        let p = self.polys[i].take().unwrap();
        let lead = &p.last_key_value().unwrap().0 .0;
        self.leads.remove(lead);
        let n = self.lead_lengths.get_mut(&lead.len()).unwrap();
        *n -= 1;
        if *n == 0 {
            self.lead_lengths.remove(&lead.len());
        }
        p
    }

    fn insert(&mut self, p: Poly) -> usize {
        let lead = p.last_key_value().unwrap().0 .0.clone();
        let i = self.polys.len();
        *self.lead_lengths.entry(lead.len()).or_default() += 1;
        self.leads.insert(lead, i);
        self.polys.push(Some(p));
        i
    }
}

type Pair = Reverse<(Word, usize, usize, usize)>;

fn overlaps(a: &[u32], b: &[u32], i: usize, j: usize, pairs: &mut BinaryHeap<Pair>) {
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            let mut w = a.to_vec();
            w.extend_from_slice(&b[k..]);
            pairs.push(Reverse((Word(w), i, j, k)));
        }
    }
}

fn contains(hay: &[u32], needle: &[u32]) -> bool {
    hay.len() >= needle.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Completes the generators to a Gröbner basis.
///
/// Fails with `DimensionBoundExceeded` once a leading word longer than
/// `max_len` appears.
pub fn complete(generators: Vec<Poly>, max_len: usize) -> Result<GroebnerBasis> {
    let mut gb = GroebnerBasis::default();
    let mut pending = generators;
    pending.reverse();
    let mut pairs: BinaryHeap<Pair> = BinaryHeap::new();
    loop {
        while let Some(f) = pending.pop() {
            let r = gb.reduce(f);
            if r.is_empty() {
                continue;
            }
            let r = make_monic(r);
            let lead = r.last_key_value().unwrap().0 .0.clone();
            if lead.len() > max_len {
                return Err(FcyError::DimensionBoundExceeded { max_len });
            }
            let stale: Vec<usize> = gb
                .leads
                .iter()
                .filter(|(w, _)| contains(w, &lead))
                .map(|(_, &i)| i)
                .collect();
            for i in stale {
                pending.push(gb.remove(i));
            }
            let i = gb.insert(r);
            let alive: Vec<usize> = gb.leads.values().copied().collect();
            for j in alive {
                let (a, b) = (gb.lead(i).to_vec(), gb.lead(j).to_vec());
                overlaps(&a, &b, i, j, &mut pairs);
                if i != j {
                    overlaps(&b, &a, j, i, &mut pairs);
                }
            }
        }
        let Some(Reverse((_, i, j, k))) = pairs.pop() else {
            break;
        };
        let (Some(f), Some(g)) = (&gb.polys[i], &gb.polys[j]) else {
            continue;
        };
        let a = &f.last_key_value().unwrap().0 .0;
        let b = &g.last_key_value().unwrap().0 .0;
        let tail = &b[k..];
        let head = &a[..a.len() - k];
        let mut s = Poly::new();
        for (w, c) in f {
            let mut x = w.0.clone();
            x.extend_from_slice(tail);
            add_term(&mut s, Word(x), c.clone());
        }
        for (w, c) in g {
            let mut x = head.to_vec();
            x.extend_from_slice(&w.0);
            add_term(&mut s, Word(x), -c);
        }
        pending.push(s);
    }
    log::debug!("groebner basis complete with {} elements", gb.len());
    Ok(gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn poly(terms: &[(i64, &[u32])]) -> Poly {
        let mut p = Poly::new();
        for &(c, w) in terms {
            add_term(&mut p, Word(w.to_vec()), Field::Rational.from_i64(c));
        }
        p
    }

    #[test]
    fn word_order_is_length_first() {
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
    }

    #[test]
    fn monomial_relations_are_already_complete() {
        let gb = complete(vec![poly(&[(1, &[0, 1])])], 8).unwrap();
        assert_eq!(gb.leading_words(), vec![vec![0, 1]]);
        assert!(gb.is_normal(&[1, 0]));
        assert!(!gb.is_normal(&[2, 0, 1]));
    }

    #[test]
    fn overlap_produces_new_element() {
        // One vertex, loops x < y, relations yx = xy and xx = 0.
        let gb = complete(
            vec![poly(&[(1, &[1, 0]), (-1, &[0, 1])]), poly(&[(1, &[0, 0])])],
            8,
        )
        .unwrap();
        // yxx -> xyx -> xxy = 0
        let r = gb.reduce(poly(&[(1, &[1, 0, 0])]));
        assert!(r.is_empty());
        let r = gb.reduce(poly(&[(1, &[1, 0])]));
        assert_eq!(r, poly(&[(1, &[0, 1])]));
    }

    #[test]
    fn bound_is_enforced() {
        let err = complete(vec![poly(&[(1, &[0, 0, 0, 0])])], 3).unwrap_err();
        assert!(matches!(
            err,
            FcyError::DimensionBoundExceeded { max_len: 3 }
        ));
    }
}
