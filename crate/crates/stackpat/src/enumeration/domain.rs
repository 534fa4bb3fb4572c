//! Lexicographic generation of domain words.

use rayon::prelude::*;

use crate::words::Domain;

/// Visits every word of `domain` with length `n` that starts with `prefix`,
/// in lexicographic order. `visit` returns false to stop early.
pub fn walk_domain(domain: Domain, n: usize, prefix: &[u32], visit: &mut dyn FnMut(&[u32]) -> bool) {
    if prefix.len() > n {
        return;
    }
    let mut st = Walk::new(domain, n);
    for &x in prefix {
        if !st.allowed(x) {
            return;
        }
        st.push(x);
    }
    st.run(visit);
}

/// Incremental state shared by all domains: the word, per-value
/// multiplicities, running max and ascent count.
struct Walk {
    domain: Domain,
    n: usize,
    word: Vec<u32>,
    count: Vec<u32>,
    distinct: usize,
    max: u32,
    ascents: u32,
    saved: Vec<(u32, u32)>,
}

impl Walk {
    fn new(domain: Domain, n: usize) -> Self {
        Walk {
            domain,
            n,
            word: Vec::with_capacity(n),
            count: vec![0; n + 2],
            distinct: 0,
            max: 0,
            ascents: 0,
            saved: Vec::with_capacity(n),
        }
    }

    /// Largest letter worth trying at the next position.
    fn bound(&self) -> u32 {
        let n = self.n as u32;
        match self.domain {
            Domain::Perm | Domain::Cayley | Domain::Modasc => n,
            Domain::Rgf => (self.max + 1).min(n),
            Domain::Asc => {
                if self.word.is_empty() {
                    1
                } else {
                    (self.ascents + 2).min(n)
                }
            }
        }
    }

    fn allowed(&self, x: u32) -> bool {
        if x == 0 || x > self.bound() {
            return false;
        }
        let i = self.word.len();
        let remaining = self.n - i - 1;
        let fresh = self.count[x as usize] == 0;
        match self.domain {
            Domain::Perm => fresh,
            Domain::Rgf | Domain::Asc => i > 0 || x == 1,
            Domain::Cayley => {
                // values below the new max that are still missing must fit
                let top = self.max.max(x) as usize;
                let have = self.distinct + usize::from(fresh);
                top - have <= remaining
            }
            Domain::Modasc => {
                if i == 0 {
                    return x == 1;
                }
                let ascent_top = self.word[i - 1] < x;
                if x > 1 && fresh != ascent_top {
                    return false;
                }
                let top = self.max.max(x) as usize;
                let have = self.distinct + usize::from(fresh);
                top - have <= remaining
            }
        }
    }

    fn push(&mut self, x: u32) {
        self.saved.push((self.max, self.ascents));
        if let Some(&last) = self.word.last() {
            if last < x {
                self.ascents += 1;
            }
        }
        if self.count[x as usize] == 0 {
            self.distinct += 1;
        }
        self.count[x as usize] += 1;
        self.max = self.max.max(x);
        self.word.push(x);
    }

    fn pop(&mut self) {
        let x = self.word.pop().expect("pop on empty walk");
        self.count[x as usize] -= 1;
        if self.count[x as usize] == 0 {
            self.distinct -= 1;
        }
        let (m, a) = self.saved.pop().expect("saved state");
        self.max = m;
        self.ascents = a;
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if self.word.len() == self.n {
            return visit(&self.word);
        }
        for x in 1..=self.bound() {
            if self.allowed(x) {
                self.push(x);
                let go_on = self.run(visit);
                self.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// All words of the domain at length `n`, lexicographically ordered.
pub fn domain_words(domain: Domain, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    walk_domain(domain, n, &[], &mut |w| {
        out.push(w.to_vec());
        true
    });
    out
}

/// Prefixes used to split a domain into independent work units. Words of
/// the growth domains all start with 1, so those split on two letters.
pub fn partition_prefixes(domain: Domain, n: usize) -> Vec<Vec<u32>> {
    let depth = match domain {
        Domain::Perm | Domain::Cayley => 1,
        _ => 2,
    };
    if n < depth {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    walk_prefixes(domain, n, depth, &mut out);
    out
}

fn walk_prefixes(domain: Domain, n: usize, depth: usize, out: &mut Vec<Vec<u32>>) {
    let mut st = Walk::new(domain, n);
    fn go(st: &mut Walk, depth: usize, out: &mut Vec<Vec<u32>>) {
        if st.word.len() == depth {
            out.push(st.word.clone());
            return;
        }
        for x in 1..=st.bound() {
            if st.allowed(x) {
                st.push(x);
                go(st, depth, out);
                st.pop();
            }
        }
    }
    go(&mut st, depth, out);
}

/// Maps each partition through `work` in parallel and returns the results
/// in prefix order, so the outcome does not depend on scheduling.
pub fn par_partitions<T, F>(domain: Domain, n: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[u32]) -> T + Sync,
{
    partition_prefixes(domain, n).par_iter().map(|p| work(p)).collect()
}

/// Parallel count of words satisfying `pred`.
pub fn par_count<F>(domain: Domain, n: usize, pred: F) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    par_partitions(domain, n, |prefix| {
        let mut c = 0u64;
        walk_domain(domain, n, prefix, &mut |w| {
            if pred(w) {
                c += 1;
            }
            true
        });
        c
    })
    .into_iter()
    .sum()
}

/// Parallel filter, returned in lexicographic order.
pub fn par_filter<F>(domain: Domain, n: usize, pred: F) -> Vec<Vec<u32>>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    par_partitions(domain, n, |prefix| {
        let mut v = Vec::new();
        walk_domain(domain, n, prefix, &mut |w| {
            if pred(w) {
                v.push(w.to_vec());
            }
            true
        });
        v
    })
    .into_iter()
    .flatten()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{format_letters, is_member, modify};

    fn sizes(d: Domain, upto: usize) -> Vec<usize> {
        (1..=upto).map(|n| domain_words(d, n).len()).collect()
    }

    #[test]
    fn cayley_three() {
        let got: Vec<String> = domain_words(Domain::Cayley, 3).iter().map(|w| format_letters(w)).collect();
        assert_eq!(
            got.join(","),
            "111,112,121,122,123,132,211,212,213,221,231,312,321"
        );
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(sizes(Domain::Perm, 6), vec![1, 2, 6, 24, 120, 720]);
        assert_eq!(sizes(Domain::Cayley, 6), vec![1, 3, 13, 75, 541, 4683]);
        assert_eq!(sizes(Domain::Rgf, 6), vec![1, 2, 5, 15, 52, 203]);
        assert_eq!(sizes(Domain::Asc, 7), vec![1, 2, 5, 15, 53, 217, 1014]);
        assert_eq!(sizes(Domain::Modasc, 7), vec![1, 2, 5, 15, 53, 217, 1014]);
        assert_eq!(domain_words(Domain::Perm, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn generation_matches_membership() {
        for d in Domain::ALL {
            for n in 1..=5 {
                let words = domain_words(d, n);
                assert!(words.windows(2).all(|p| p[0] < p[1]), "{d} {n} not lex");
                // independent oracle: filter every word over 1..=n
                let mut brute = Vec::new();
                let mut w = vec![1u32; n];
                loop {
                    if is_member(&w, d) {
                        brute.push(w.clone());
                    }
                    let Some(i) = (0..n).rev().find(|&i| w[i] < n as u32) else { break };
                    w[i] += 1;
                    w[i + 1..].iter_mut().for_each(|v| *v = 1);
                }
                assert_eq!(words, brute, "{d} {n}");
            }
        }
    }

    #[test]
    fn modasc_is_image_of_asc() {
        for n in 1..=7 {
            let mut img: Vec<Vec<u32>> = domain_words(Domain::Asc, n).iter().map(|x| modify(x).unwrap()).collect();
            img.sort();
            assert_eq!(img, domain_words(Domain::Modasc, n));
        }
    }

    #[test]
    fn partitions_cover_domain() {
        for d in Domain::ALL {
            let n = 5;
            let merged = par_filter(d, n, |_| true);
            assert_eq!(merged, domain_words(d, n));
        }
    }
}
