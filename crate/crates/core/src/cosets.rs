//! Todd–Coxeter coset enumeration (HLT strategy with coincidence
//! processing) over the square relators of a presentation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::Presentation;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{Letter, Side, Word};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Closed,
    /// The row budget ran out; the index is unknown.
    Overflow,
}

/// Column numbering: horizontal slots first, then vertical. Since every
/// side has an even number of slots, the inverse of column `c` is `c ^ 1`.
#[derive(Clone, Debug)]
struct Columns {
    h_slots: usize,
    letters: Vec<Letter>,
}

impl Columns {
    fn new(pres: &Presentation) -> Self {
        let mut letters = pres.letters_of(Side::H);
        letters.sort_by_key(|l| l.slot());
        let mut v = pres.letters_of(Side::V);
        v.sort_by_key(|l| l.slot());
        let h_slots = letters.len();
        letters.extend(v);
        Columns { h_slots, letters }
    }

    fn col(&self, l: Letter) -> usize {
        match l.side {
            Side::H => l.slot(),
            Side::V => self.h_slots + l.slot(),
        }
    }

    fn encode(&self, w: &[Letter]) -> Vec<usize> {
        w.iter().map(|&l| self.col(l)).collect()
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max_rows: usize,
    overflow: bool,
    defined: usize,
}

impl Enumerator {
    fn new(ncols: usize, max_rows: usize) -> Self {
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            queue: Vec::new(),
            max_rows,
            overflow: false,
            defined: 1,
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.table[c * self.ncols + x];
        (v != UNDEF).then_some(v as usize)
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.ncols + x] = d as u32;
    }

    fn unset(&mut self, c: usize, x: usize) {
        self.table[c * self.ncols + x] = UNDEF;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.rows() >= self.max_rows {
            self.overflow = true;
            return false;
        }
        let d = self.rows();
        self.defined += 1;
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        true
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.queue.push(hi as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.ncols {
                let Some(d) = self.get(g, x) else { continue };
                self.unset(d, x ^ 1);
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(e) = self.get(mu, x) {
                    self.merge(nu, e);
                } else if let Some(e) = self.get(nu, x ^ 1) {
                    self.merge(mu, e);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    /// Traces `w` from `c` without defining cosets, recording a deduction
    /// or coincidence if the scan completes or leaves a single gap.
    fn scan(&mut self, c: usize, w: &[usize]) {
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        while i <= j {
            match self.get(f, w[i as usize]) {
                Some(n) => {
                    f = n;
                    i += 1;
                }
                None => break,
            }
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i {
            match self.get(b, w[j as usize] ^ 1) {
                Some(n) => {
                    b = n;
                    j -= 1;
                }
                None => break,
            }
        }
        if j < i {
            self.coincidence(f, b);
        } else if i == j {
            let x = w[i as usize];
            self.set(f, x, b);
            self.set(b, x ^ 1, f);
        }
    }

    /// Scans every relator from every live coset without defining new ones.
    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.rows() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r);
            }
            c += 1;
        }
    }

    /// Drops dead rows, keeping live cosets in their current order. Returns
    /// the number of live cosets below `mark`.
    fn compact(&mut self, mark: usize) -> usize {
        let n = self.rows();
        let mut new_id = vec![UNDEF; n];
        let mut k = 0usize;
        let mut new_mark = 0;
        for (c, id) in new_id.iter_mut().enumerate() {
            if c == mark {
                new_mark = k;
            }
            if self.is_live(c) {
                *id = k as u32;
                k += 1;
            }
        }
        if mark >= n {
            new_mark = k;
        }
        let mut table = Vec::with_capacity(k * self.ncols);
        for c in 0..n {
            if new_id[c] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                table.push(match self.get(c, x) {
                    Some(d) => new_id[d],
                    None => UNDEF,
                });
            }
        }
        self.table = table;
        self.parent = (0..k as u32).collect();
        new_mark
    }

    /// Traces `w` from `c` forwards and backwards, defining new cosets
    /// until the two ends meet. Returns `false` on overflow.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> bool {
        if w.is_empty() {
            return true;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j {
                match self.get(f, w[i as usize]) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i {
                match self.get(b, w[j as usize] ^ 1) {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return true;
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return true;
            }
            if !self.define(f, w[i as usize]) {
                return false;
            }
        }
    }
}

/// Result of an enumeration. A closed table is compacted and standardized:
/// rows are numbered in breadth-first order from the subgroup coset, which
/// is row 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    status: Status,
    columns: Vec<Letter>,
    h_slots: usize,
    rows: Vec<Vec<u32>>,
    defined: usize,
}

impl CosetTable {
    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.status == Status::Closed
    }

    /// `[Γ : H]` for a closed table.
    pub fn index(&self) -> Option<usize> {
        self.is_closed().then_some(self.rows.len())
    }

    /// Total rows allocated during the run, including merged ones.
    pub fn cosets_defined(&self) -> usize {
        self.defined
    }

    pub fn columns(&self) -> &[Letter] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn col(&self, l: Letter) -> usize {
        match l.side {
            Side::H => l.slot(),
            Side::V => self.h_slots + l.slot(),
        }
    }

    /// Image of coset `c` under right multiplication by `w`.
    pub fn trace(&self, c: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(c, |cur, &l| {
            let v = *self.rows.get(cur)?.get(self.col(l))?;
            (v != UNDEF).then_some(v as usize)
        })
    }

    /// The right-multiplication action of every letter on the cosets.
    pub fn permutation_representation(&self) -> Result<BTreeMap<Letter, Permutation>> {
        if !self.is_closed() {
            return Err(Error::TableNotClosed);
        }
        let mut out = BTreeMap::new();
        for (x, &letter) in self.columns.iter().enumerate() {
            let images = self.rows.iter().map(|r| r[x]).collect();
            let perm = Permutation::from_images(images).ok_or(Error::TableNotClosed)?;
            out.insert(letter, perm);
        }
        Ok(out)
    }

    /// JSON rows keyed by letter names, with 1-based coset numbers.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(l, &v)| {
                        let entry = if v == UNDEF {
                            serde_json::Value::Null
                        } else {
                            (v as u64 + 1).into()
                        };
                        (l.to_string(), entry)
                    })
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Enumerates the cosets of `⟨subgens⟩` in the group presented by the
/// squares of `pres`, allocating at most `max_cosets` rows.
pub fn todd_coxeter(
    pres: &Presentation,
    subgens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    for w in subgens {
        pres.check_word(w)?;
    }
    let cols = Columns::new(pres);
    let ncols = cols.letters.len();
    let relators: Vec<Vec<usize>> = pres.squares().iter().map(|sq| cols.encode(sq)).collect();
    let gens: Vec<Vec<usize>> = subgens.iter().map(|w| cols.encode(w.letters())).collect();

    let max_rows = max_cosets.max(1);
    let mut e = Enumerator::new(ncols, max_rows);
    let mut ok = gens.iter().all(|g| e.scan_and_fill(0, g));
    let per_coset = ncols + relators.iter().map(Vec::len).sum::<usize>();
    let mut a = 0usize;
    while ok && a < e.rows() {
        if e.rows() + per_coset > max_rows {
            e.lookahead(&relators);
            a = e.compact(a);
            if a >= e.rows() {
                break;
            }
            // too little reclaimed to be worth another round
            if e.rows() + per_coset + max_rows / 64 > max_rows {
                e.overflow = true;
                break;
            }
        }
        for r in &relators {
            if !e.is_live(a) {
                break;
            }
            if !e.scan_and_fill(a, r) {
                ok = false;
                break;
            }
        }
        if ok && e.is_live(a) {
            for x in 0..ncols {
                if e.get(a, x).is_none() && !e.define(a, x) {
                    ok = false;
                    break;
                }
            }
        }
        a += 1;
    }
    let defined = e.defined;
    let status = if ok && !e.overflow {
        Status::Closed
    } else {
        Status::Overflow
    };
    let rows = match status {
        Status::Closed => standardize(&mut e),
        Status::Overflow => live_rows(&mut e),
    };
    Ok(CosetTable {
        status,
        columns: cols.letters,
        h_slots: cols.h_slots,
        rows,
        defined,
    })
}

/// Renumbers the live cosets in breadth-first order from coset 0.
fn standardize(e: &mut Enumerator) -> Vec<Vec<u32>> {
    let n = e.rows();
    let mut new_id = vec![UNDEF; n];
    let mut order = vec![0usize];
    new_id[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        k += 1;
        for x in 0..e.ncols {
            if let Some(d) = e.get(c, x) {
                let d = e.rep(d);
                if new_id[d] == UNDEF {
                    new_id[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
    }
    order
        .iter()
        .map(|&c| {
            (0..e.ncols)
                .map(|x| match e.get(c, x) {
                    Some(d) => new_id[e.rep(d)],
                    None => UNDEF,
                })
                .collect()
        })
        .collect()
}

fn live_rows(e: &mut Enumerator) -> Vec<Vec<u32>> {
    let n = e.rows();
    let live: Vec<usize> = (0..n).filter(|&c| e.is_live(c)).collect();
    let mut new_id = vec![UNDEF; n];
    for (i, &c) in live.iter().enumerate() {
        new_id[c] = i as u32;
    }
    live.iter()
        .map(|&c| {
            (0..e.ncols)
                .map(|x| match e.get(c, x) {
                    Some(d) => new_id[e.rep(d)],
                    None => UNDEF,
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_squares;
    use crate::membership::factor_quaternion;

    fn words(pres: &Presentation, s: &[&str]) -> Vec<Word> {
        s.iter().map(|w| pres.parse_word(w).unwrap()).collect()
    }

    fn check_closed(pres: &Presentation, t: &CosetTable, gens: &[Word]) {
        let n = t.index().unwrap();
        for c in 0..n {
            for r in pres.relator_words() {
                assert_eq!(t.trace(c, r.letters()), Some(c));
            }
        }
        for g in gens {
            assert_eq!(t.trace(0, g.letters()), Some(0));
        }
        let perms = t.permutation_representation().unwrap();
        assert_eq!(perms.len(), pres.letters().len());
        for (l, p) in &perms {
            assert_eq!(p.degree(), n);
            assert!(p.then(&perms[&l.inv()]).is_identity());
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for p in perms.values() {
                let d = p.apply(c);
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "action is transitive");
    }

    #[test]
    fn whole_group_has_index_one() {
        let pres = build_squares(3, 5).unwrap();
        let gens: Vec<Word> = pres
            .letters()
            .into_iter()
            .filter(|l| !l.inverse)
            .map(|l| pres.word(vec![l]))
            .collect();
        let t = todd_coxeter(&pres, &gens, 1000).unwrap();
        assert_eq!(t.index(), Some(1));
        check_closed(&pres, &t, &gens);
        for p in t.permutation_representation().unwrap().values() {
            assert!(p.is_identity());
        }
    }

    #[test]
    fn index_four_in_gamma_3_5() {
        let pres = build_squares(3, 5).unwrap();
        let gens = words(&pres, &["a1", "b1"]);
        let t = todd_coxeter(&pres, &gens, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), Some(4));
        check_closed(&pres, &t, &gens);
    }

    #[test]
    fn index_896_in_gamma_3_5() {
        let pres = build_squares(3, 5).unwrap();
        let gens = words(&pres, &["a1 a1", "b1 b1"]);
        let t = todd_coxeter(&pres, &gens, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), Some(896));
        assert_eq!(896 % 4, 0);
        check_closed(&pres, &t, &gens);
        let again = todd_coxeter(&pres, &gens, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn index_32_in_gamma_5_17() {
        let pres = build_squares(5, 17).unwrap();
        let gens: Vec<Word> = ["1+2i", "1+4k"]
            .iter()
            .map(|s| factor_quaternion(&s.parse().unwrap(), &pres).unwrap())
            .collect();
        let t = todd_coxeter(&pres, &gens, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.index(), Some(32));
        check_closed(&pres, &t, &gens);
    }

    #[test]
    fn overflow_is_a_status() {
        let pres = build_squares(3, 5).unwrap();
        let gens = words(&pres, &["a1 a1", "b1 b1"]);
        let t = todd_coxeter(&pres, &gens, 100).unwrap();
        assert_eq!(t.status(), Status::Overflow);
        assert_eq!(t.index(), None);
        assert_eq!(t.permutation_representation(), Err(Error::TableNotClosed));
        let t = todd_coxeter(&pres, &words(&pres, &["a1^3", "b1^3"]), 20_000).unwrap();
        assert_eq!(t.status(), Status::Overflow);
    }

    #[test]
    fn json_rows_are_keyed_by_letters() {
        let pres = build_squares(3, 5).unwrap();
        let t = todd_coxeter(&pres, &words(&pres, &["a1", "b1"]), 1000).unwrap();
        let v = t.to_json();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["a1"], 1);
        assert_eq!(rows[0]["b1^-1"], 1);
        assert_eq!(rows[0].as_object().unwrap().len(), 10);
    }

    #[test]
    fn foreign_words_are_rejected() {
        let p35 = build_squares(3, 5).unwrap();
        let p57 = build_squares(5, 7).unwrap();
        let w = p57.parse_word("a1").unwrap();
        assert_eq!(todd_coxeter(&p35, &[w], 10), Err(Error::AlphabetMismatch));
    }
}
