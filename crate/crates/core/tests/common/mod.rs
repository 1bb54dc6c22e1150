//! Brute-force oracles over prime fields. Vectors are integers whose base-q
//! digits are the coordinates; subspaces are sorted vector lists built by
//! closure, with no row reduction anywhere.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qcover::{FqSpace, Subspace};

pub struct Brute {
    pub q: u32,
    pub n: usize,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Brute {
    pub fn new(q: u32, n: usize) -> Brute {
        let size = q.pow(n as u32);
        let digits = |x: u32| -> Vec<u32> { (0..n).map(|i| x / q.pow(i as u32) % q).collect() };
        let join = |d: Vec<u32>| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * q + c) };
        let mut add = vec![0; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                let s = digits(a)
                    .iter()
                    .zip(digits(b))
                    .map(|(x, y)| (x + y) % q)
                    .collect();
                add[(a * size + b) as usize] = join(s);
            }
        }
        let mut mul = vec![0; (q * size) as usize];
        for c in 0..q {
            for a in 0..size {
                mul[(c * size + a) as usize] = join(digits(a).iter().map(|x| x * c % q).collect());
            }
        }
        Brute {
            q,
            n,
            size,
            add,
            mul,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    pub fn scale(&self, c: u32, a: u32) -> u32 {
        self.mul[(c * self.size + a) as usize]
    }

    /// span(S ∪ {v}) = union over c of S + c v
    pub fn extend(&self, s: &[u32], v: u32) -> Vec<u32> {
        let mut out = BTreeSet::new();
        for c in 0..self.q {
            let cv = self.scale(c, v);
            for &x in s {
                out.insert(self.add(x, cv));
            }
        }
        out.into_iter().collect()
    }

    pub fn span(&self, gens: &[u32]) -> Vec<u32> {
        gens.iter().fold(vec![0], |s, &v| self.extend(&s, v))
    }

    /// Every subspace of every dimension, grown one vector at a time.
    pub fn all_subspaces(&self) -> Vec<BTreeSet<Vec<u32>>> {
        let mut levels = vec![BTreeSet::from([vec![0u32]])];
        for _ in 0..self.n {
            let mut next = BTreeSet::new();
            for s in levels.last().unwrap() {
                for v in 0..self.size {
                    if s.binary_search(&v).is_err() {
                        next.insert(self.extend(s, v));
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    pub fn encode(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.q + c)
    }

    /// Vector set of a library subspace, computed from its rows by closure.
    pub fn members(&self, s: &Subspace) -> Vec<u32> {
        let gens: Vec<u32> = s.rows().map(|r| self.encode(&r.coords())).collect();
        self.span(&gens)
    }

    pub fn subset(a: &[u32], b: &[u32]) -> bool {
        a.iter().all(|x| b.binary_search(x).is_ok())
    }
}

pub fn space(q: u32, n: usize) -> FqSpace {
    FqSpace::with_order(q, n).unwrap()
}
