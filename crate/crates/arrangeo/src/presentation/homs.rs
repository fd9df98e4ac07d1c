//! Counting homomorphisms into small finite groups.
//!
//! The count is an isomorphism invariant of the presented group, so two
//! presentations with different counts define different groups.

use rayon::prelude::*;

use super::Presentation;
use crate::word::FreeWord;

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<u8>>,
    inv: Vec<u8>,
}

impl FiniteGroup {
    /// Builds the group generated by permutations of `0..deg`, closing under products.
    pub fn from_permutations(name: &str, deg: usize, gens: &[Vec<usize>]) -> FiniteGroup {
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id];
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..deg).map(|i| g[elems[k][i]]).collect();
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
            k += 1;
        }
        let idx = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap() as u8;
        let table: Vec<Vec<u8>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        // a·b acts as "first b, then a"
                        let p: Vec<usize> = (0..deg).map(|i| a[b[i]]).collect();
                        idx(&p)
                    })
                    .collect()
            })
            .collect();
        let inv = (0..elems.len()).map(|a| table[a].iter().position(|&c| c == 0).unwrap() as u8).collect();
        FiniteGroup { name: name.to_string(), table, inv }
    }

    pub fn symmetric(k: usize) -> FiniteGroup {
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        FiniteGroup::from_permutations(&format!("S{k}"), k, &[swap, cycle])
    }

    pub fn cyclic(k: usize) -> FiniteGroup {
        let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        FiniteGroup::from_permutations(&format!("Z{k}"), k, &[cycle])
    }

    /// Symmetries of the square, order 8.
    pub fn dihedral4() -> FiniteGroup {
        FiniteGroup::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    /// The built-in targets `S3`, `S4`, `Z4`, `D4`.
    pub fn by_name(name: &str) -> Option<FiniteGroup> {
        match name {
            "S3" => Some(FiniteGroup::symmetric(3)),
            "S4" => Some(FiniteGroup::symmetric(4)),
            "Z4" => Some(FiniteGroup::cyclic(4)),
            "D4" => Some(FiniteGroup::dihedral4()),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Conjugacy class representatives with class sizes.
    pub fn classes(&self) -> Vec<(u8, u64)> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut size = 0;
            for h in 0..n as u8 {
                let c = self.mul(self.mul(h, g as u8), self.inv(h)) as usize;
                if !seen[c] {
                    seen[c] = true;
                    size += 1;
                }
            }
            out.push((g as u8, size));
        }
        out
    }

    fn eval(&self, w: &[(usize, bool)], vals: &[u8]) -> u8 {
        w.iter().fold(0u8, |acc, &(g, inv)| {
            let v = vals[g];
            self.mul(acc, if inv { self.inv(v) } else { v })
        })
    }
}

struct Plan {
    /// Generators in assignment order.
    order: Vec<usize>,
    /// `checks[k]`: relators whose last generator is `order[k]`.
    checks: Vec<Vec<Vec<(usize, bool)>>>,
    /// Generators occurring in no relator.
    free: usize,
}

fn plan(relators: &[FreeWord], n: usize) -> Plan {
    let supports: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| {
            let mut s: Vec<usize> = r.letters().iter().map(|l| l.unsigned_abs() as usize - 1).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let used: Vec<bool> = (0..n).map(|g| supports.iter().any(|s| s.contains(&g))).collect();
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; n];
    // greedily pick the generator that completes the most relators, then the most frequent
    while order.len() < used.iter().filter(|u| **u).count() {
        let best = (0..n)
            .filter(|&g| used[g] && !placed[g])
            .max_by_key(|&g| {
                let done = supports.iter().filter(|s| s.contains(&g) && s.iter().all(|h| *h == g || placed[*h])).count();
                let touch = supports.iter().filter(|s| s.contains(&g)).count();
                (done, touch, std::cmp::Reverse(g))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; n];
        for (k, &g) in order.iter().enumerate() {
            p[g] = k;
        }
        p
    };
    let mut checks = vec![Vec::new(); order.len()];
    for (r, s) in relators.iter().zip(&supports) {
        if s.is_empty() {
            continue;
        }
        let last = s.iter().map(|g| pos[*g]).max().unwrap();
        checks[last].push(r.letters().iter().map(|l| (l.unsigned_abs() as usize - 1, *l < 0)).collect());
    }
    Plan { order, checks, free: used.iter().filter(|u| !**u).count() }
}

fn extend(t: &FiniteGroup, p: &Plan, k: usize, vals: &mut Vec<u8>) -> u64 {
    if k == p.order.len() {
        return 1;
    }
    let g = p.order[k];
    let mut total = 0;
    for v in 0..t.order() as u8 {
        vals[g] = v;
        if p.checks[k].iter().all(|r| t.eval(r, vals) == 0) {
            total += extend(t, p, k + 1, vals);
        }
    }
    total
}

/// Number of homomorphisms from the presented group into `t`.
pub fn count_homs(p: &Presentation, t: &FiniteGroup) -> u64 {
    let relators = p.relators();
    if relators.iter().any(|r| r.max_gen() > p.n) {
        panic!("relator mentions a generator beyond {}", p.n);
    }
    let plan = plan(&relators, p.n);
    let free_factor = (t.order() as u64).pow(plan.free as u32);
    if plan.order.is_empty() {
        return free_factor;
    }
    let first = plan.order[0];
    // conjugation acts freely on the image of the first generator's class
    let classes = t.classes();
    let seeds: Vec<(u8, u64, u8)> = classes
        .iter()
        .flat_map(|&(g, size)| (0..t.order() as u8).map(move |h| (g, size, h)))
        .collect();
    let total: u64 = seeds
        .par_iter()
        .map(|&(g, size, h)| {
            let mut vals = vec![0u8; p.n];
            vals[first] = g;
            if !plan.checks[0].iter().all(|r| t.eval(r, &vals) == 0) {
                return 0;
            }
            if plan.order.len() == 1 {
                return if h == 0 { size } else { 0 };
            }
            let second = plan.order[1];
            vals[second] = h;
            if !plan.checks[1].iter().all(|r| t.eval(r, &vals) == 0) {
                return 0;
            }
            size * extend(t, &plan, 2, &mut vals)
        })
        .sum();
    total * free_factor
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_classes() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::cyclic(4).order(), 4);
        assert_eq!(FiniteGroup::dihedral4().order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).classes().len(), 5);
        assert_eq!(FiniteGroup::dihedral4().classes().len(), 5);
    }

    #[test]
    fn commuting_pairs_in_s3() {
        // brute force over all pairs
        let t = FiniteGroup::symmetric(3);
        let brute = (0..6u8).flat_map(|a| (0..6u8).map(move |b| (a, b))).filter(|&(a, b)| t.mul(a, b) == t.mul(b, a)).count();
        assert_eq!(brute, 18);
    }
}
