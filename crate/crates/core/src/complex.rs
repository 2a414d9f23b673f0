//! The one-vertex square complex of `Γ_{p,l}`: generators, the `mn` square
//! relators, the link of the vertex, and the rewrite tables that swap
//! adjacent horizontal and vertical letters.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::check_prime_pair;
use crate::error::{CornerDefect, Error, Result};
use crate::gensets::GeneratorSet;
use crate::perm::Permutation;
use crate::quat::{is_central, reduce_canonical, GroupElement, Quaternion};
use crate::word::{GammaKey, Letter, Side, Word};

/// A square relator `a b a' b'` with `a, a'` horizontal and `b, b'` vertical.
pub type Square = [Letter; 4];

/// Presentation `⟨a_1..a_m, b_1..b_n | R_{m·n}⟩` with quaternion lifts of the
/// generators and precomputed corner swaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    key: GammaKey,
    h_gens: Vec<GroupElement>,
    v_gens: Vec<GroupElement>,
    squares: Vec<Square>,
    // (h, v) -> (v', h') with h v = v' h'
    ab_table: Vec<(Letter, Letter)>,
    // (v, h) -> (h', v') with v h = h' v'
    ba_table: Vec<(Letter, Letter)>,
}

/// The four rewritings of a square cycle that start with a horizontal letter.
pub fn h_first_forms(sq: &Square) -> [Square; 4] {
    let [h1, v1, h2, v2] = *sq;
    [
        [h1, v1, h2, v2],
        [h2, v2, h1, v1],
        [h2.inv(), v1.inv(), h1.inv(), v2.inv()],
        [h1.inv(), v2.inv(), h2.inv(), v1.inv()],
    ]
}

/// Least rewriting among the eight dihedral forms of the cycle. Horizontal
/// letters sort first, so the minimum always starts with one.
pub fn normalize_square(sq: &Square) -> Square {
    h_first_forms(sq).into_iter().min().expect("four forms")
}

fn check_square_shape(sq: &Square) -> Result<()> {
    let sides = sq.map(|l| l.side);
    if sides != [Side::H, Side::V, Side::H, Side::V] {
        return Err(Error::Parse(format!(
            "square {} does not alternate horizontal and vertical letters",
            crate::word::format_letters(sq)
        )));
    }
    Ok(())
}

/// Corner multiplicities of the vertex link, indexed by signed letter slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    h_letters: usize,
    v_letters: usize,
    counts: Vec<usize>,
}

impl LinkGraph {
    pub fn multiplicity(&self, h: Letter, v: Letter) -> usize {
        self.counts[h.slot() * self.v_letters + v.slot()]
    }

    /// Sizes of the two vertex classes, `(2m, 2n)`.
    pub fn bipartition(&self) -> (usize, usize) {
        (self.h_letters, self.v_letters)
    }

    pub fn is_complete_bipartite(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }

    pub fn defects(&self) -> Vec<CornerDefect> {
        let mut out = Vec::new();
        for hs in 0..self.h_letters {
            for vs in 0..self.v_letters {
                let count = self.counts[hs * self.v_letters + vs];
                if count != 1 {
                    out.push(CornerDefect {
                        h: Letter::from_slot(Side::H, hs),
                        v: Letter::from_slot(Side::V, vs),
                        count,
                    });
                }
            }
        }
        out
    }
}

/// Counts the corners of the given squares in the link of the single vertex.
/// At the vertex between consecutive edges `x, y` of a boundary cycle the
/// corner joins `x^-1` and `y`.
pub fn link_graph(m: usize, n: usize, squares: &[Square]) -> LinkGraph {
    let (hl, vl) = (2 * m, 2 * n);
    let mut counts = vec![0usize; hl * vl];
    for sq in squares {
        for i in 0..4 {
            let x = sq[i];
            let y = sq[(i + 1) % 4];
            let (h, v) = if y.side == Side::H {
                (y, x.inv())
            } else {
                (x.inv(), y)
            };
            counts[h.slot() * vl + v.slot()] += 1;
        }
    }
    LinkGraph {
        h_letters: hl,
        v_letters: vl,
        counts,
    }
}

/// Verifies the link condition for a list of squares.
pub fn check_link_squares(m: usize, n: usize, squares: &[Square]) -> Result<LinkGraph> {
    let g = link_graph(m, n, squares);
    if g.is_complete_bipartite() {
        Ok(g)
    } else {
        Err(Error::LinkViolation(g.defects()))
    }
}

pub fn check_link(pres: &Presentation) -> Result<LinkGraph> {
    check_link_squares(pres.h_rank(), pres.v_rank(), &pres.squares)
}

/// Builds the square complex of `Γ_{p,l}`. For every corner `(a, b)` the
/// product of lifts `x y` factors uniquely as `± y' x'` with `y' ∈ X_l`,
/// `x' ∈ X_p`, giving the relator `a b ψ(x')^-1 ψ(y')^-1`.
pub fn build_squares(p: u64, l: u64) -> Result<Presentation> {
    check_prime_pair(p, l)?;
    let gp = GeneratorSet::new(p)?;
    let gl = GeneratorSet::new(l)?;
    let l_big = BigInt::from(l);
    let signed = |gs: &GeneratorSet, side: Side| -> Vec<(Letter, Quaternion)> {
        (0..2 * gs.rank())
            .map(|s| {
                let letter = Letter::from_slot(side, s);
                let lift = gs.element(letter.index, letter.inverse).lift();
                (letter, lift)
            })
            .collect()
    };
    let hs = signed(&gp, Side::H);
    let vs = signed(&gl, Side::V);

    let mut squares = BTreeSet::new();
    for (a, x) in &hs {
        for (b, y) in &vs {
            let xy = x * y;
            let mut found = None;
            for (b2, y2) in &vs {
                let w = (&y2.conj() * &xy).to_integers().expect("integral lifts");
                if !w.iter().all(|c| (c % &l_big).is_zero()) {
                    continue;
                }
                let x2 = w.map(|c| c / &l_big);
                let e = reduce_canonical(&Quaternion::from_integers(&x2))?;
                let Ok((idx, inv)) = gp.lookup_letter(&e) else {
                    continue;
                };
                if found.is_some() {
                    return Err(Error::DuplicateCorner(*a, *b));
                }
                found = Some((Letter::new(Side::H, idx, inv), *b2));
            }
            let (a2, b2) = found.ok_or(Error::NoMatch(*a, *b))?;
            // a b = b2 a2
            squares.insert(normalize_square(&[*a, *b, a2.inv(), b2.inv()]));
        }
    }
    Presentation::from_parts(
        GammaKey { p, l },
        gp.labels().to_vec(),
        gl.labels().to_vec(),
        squares.into_iter().collect(),
    )
}

impl Presentation {
    /// Assembles a presentation, checking the shape of every square, the link
    /// condition and that each relator evaluates to a central quaternion.
    pub fn from_parts(
        key: GammaKey,
        h_gens: Vec<GroupElement>,
        v_gens: Vec<GroupElement>,
        squares: Vec<Square>,
    ) -> Result<Self> {
        let (m, n) = (h_gens.len(), v_gens.len());
        for sq in &squares {
            check_square_shape(sq)?;
            for l in sq {
                let bound = if l.side == Side::H { m } else { n };
                if l.index as usize >= bound {
                    return Err(Error::NotAGenerator(l.to_string()));
                }
            }
        }
        check_link_squares(m, n, &squares)?;

        let (hl, vl) = (2 * m, 2 * n);
        let mut ab: Vec<Option<(Letter, Letter)>> = vec![None; hl * vl];
        let mut ba: Vec<Option<(Letter, Letter)>> = vec![None; hl * vl];
        for sq in &squares {
            for [h1, v1, h2, v2] in h_first_forms(sq) {
                let ab_slot = &mut ab[h1.slot() * vl + v1.slot()];
                if ab_slot.replace((v2.inv(), h2.inv())).is_some() {
                    return Err(Error::DuplicateCorner(h1, v1));
                }
                let ba_slot = &mut ba[v2.inv().slot() * hl + h2.inv().slot()];
                if ba_slot.replace((h1, v1)).is_some() {
                    return Err(Error::DuplicateCorner(h2.inv(), v2.inv()));
                }
            }
        }
        let unwrap_table = |t: Vec<Option<(Letter, Letter)>>| -> Result<Vec<(Letter, Letter)>> {
            t.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::LinkViolation(link_graph(m, n, &squares).defects()))
        };
        let pres = Presentation {
            key,
            ab_table: unwrap_table(ab)?,
            ba_table: unwrap_table(ba)?,
            h_gens,
            v_gens,
            squares,
        };
        for sq in &pres.squares {
            let q = sq
                .iter()
                .fold(Quaternion::one(), |acc, &l| &acc * &pres.lift(l).lift());
            if !is_central(&q) {
                return Err(Error::Parse(format!(
                    "relator {} is not central",
                    crate::word::format_letters(sq)
                )));
            }
        }
        Ok(pres)
    }

    pub fn key(&self) -> GammaKey {
        self.key
    }

    pub fn p(&self) -> u64 {
        self.key.p
    }

    pub fn l(&self) -> u64 {
        self.key.l
    }

    /// Number of horizontal generators `m`.
    pub fn h_rank(&self) -> usize {
        self.h_gens.len()
    }

    /// Number of vertical generators `n`.
    pub fn v_rank(&self) -> usize {
        self.v_gens.len()
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn generators(&self, side: Side) -> &[GroupElement] {
        match side {
            Side::H => &self.h_gens,
            Side::V => &self.v_gens,
        }
    }

    /// All signed letters: `a1, a1^-1, a2, …, b1, b1^-1, …`.
    pub fn letters(&self) -> Vec<Letter> {
        let h = (0..2 * self.h_rank()).map(|s| Letter::from_slot(Side::H, s));
        let v = (0..2 * self.v_rank()).map(|s| Letter::from_slot(Side::V, s));
        h.chain(v).collect()
    }

    pub fn letters_of(&self, side: Side) -> Vec<Letter> {
        let count = match side {
            Side::H => self.h_rank(),
            Side::V => self.v_rank(),
        };
        (0..2 * count).map(|s| Letter::from_slot(side, s)).collect()
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        (l.index as usize) < self.generators(l.side).len()
    }

    /// Canonical quaternion class of a signed letter.
    pub fn lift(&self, l: Letter) -> GroupElement {
        let g = &self.generators(l.side)[l.index as usize];
        if l.inverse {
            g.inverse()
        } else {
            g.clone()
        }
    }

    /// The letter whose class is `e`, if any.
    pub fn letter_of(&self, e: &GroupElement) -> Option<Letter> {
        self.letters().into_iter().find(|&l| &self.lift(l) == e)
    }

    /// `h v = v' h'`.
    pub fn swap_hv(&self, h: Letter, v: Letter) -> (Letter, Letter) {
        self.ab_table[h.slot() * 2 * self.v_rank() + v.slot()]
    }

    /// `v h = h' v'`.
    pub fn swap_vh(&self, v: Letter, h: Letter) -> (Letter, Letter) {
        self.ba_table[v.slot() * 2 * self.h_rank() + h.slot()]
    }

    pub fn word(&self, letters: Vec<Letter>) -> Word {
        Word::new(self.key, letters)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w = Word::parse(self.key, s)?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.key() != self.key || !w.letters().iter().all(|&l| self.contains_letter(l)) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn relator_words(&self) -> Vec<Word> {
        self.squares
            .iter()
            .map(|sq| self.word(sq.to_vec()))
            .collect()
    }
}

/// `ρ_v(b)` for a word `b` in vertical letters: the permutation of `E_h`
/// sending `a` to the unique `a'` with `a^-1 b a' ∈ E_v` (letter by letter),
/// composed left to right along the word. Indexed by horizontal letter slot.
pub fn rho_v(pres: &Presentation, b: &Word) -> Result<Permutation> {
    pres.check_word(b)?;
    let hl = 2 * pres.h_rank();
    let mut acc = Permutation::identity(hl);
    for &v in b.letters() {
        if v.side != Side::V {
            return Err(Error::SideMismatch {
                expected: Side::V.name(),
            });
        }
        let mut images = vec![0u32; hl];
        for s in 0..hl {
            let a2 = Letter::from_slot(Side::H, s);
            // v a2 = a b~
            let (a, _) = pres.swap_vh(v, a2);
            images[a.slot()] = s as u32;
        }
        let step = Permutation::from_images(images).expect("link condition gives a bijection");
        acc = acc.then(&step);
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct GenJson {
    letter: String,
    lift: [i64; 4],
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    p: u64,
    l: u64,
    hgens: Vec<GenJson>,
    vgens: Vec<GenJson>,
    squares: Vec<[String; 4]>,
}

fn small_lift(g: &GroupElement) -> [i64; 4] {
    g.rep()
        .clone()
        .map(|x| x.to_i64().expect("generator lifts are small"))
}

/// Serialization formats for presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn export_presentation(pres: &Presentation, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("gamma {} {}\n", pres.p(), pres.l());
            for side in [Side::H, Side::V] {
                let tag = if side == Side::H { "hgen" } else { "vgen" };
                for (i, g) in pres.generators(side).iter().enumerate() {
                    let [a, b, c, d] = small_lift(g);
                    let letter = Letter::new(side, i as u16, false);
                    writeln!(out, "{tag} {letter} = {a} {b} {c} {d}").unwrap();
                }
            }
            for sq in &pres.squares {
                writeln!(out, "square {} {} {} {}", sq[0], sq[1], sq[2], sq[3]).unwrap();
            }
            out
        }
        Format::Json => {
            let gens = |side: Side| {
                pres.generators(side)
                    .iter()
                    .enumerate()
                    .map(|(i, g)| GenJson {
                        letter: Letter::new(side, i as u16, false).to_string(),
                        lift: small_lift(g),
                    })
                    .collect()
            };
            let doc = PresentationJson {
                p: pres.p(),
                l: pres.l(),
                hgens: gens(Side::H),
                vgens: gens(Side::V),
                squares: pres
                    .squares
                    .iter()
                    .map(|sq| sq.map(|l| l.to_string()))
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("plain data serializes")
        }
    }
}

fn gens_from(side: Side, entries: Vec<(String, [i64; 4])>) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    for (i, (name, [a, b, c, d])) in entries.into_iter().enumerate() {
        let letter: Letter = name.parse()?;
        if letter != Letter::new(side, i as u16, false) {
            return Err(Error::Parse(format!("generator {name} out of order")));
        }
        out.push(reduce_canonical(&Quaternion::from_ints(a, b, c, d))?);
    }
    Ok(out)
}

pub fn parse_presentation(s: &str) -> Result<Presentation> {
    if s.trim_start().starts_with('{') {
        let doc: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let squares = doc
            .squares
            .iter()
            .map(|sq| -> Result<Square> {
                Ok([
                    sq[0].parse()?,
                    sq[1].parse()?,
                    sq[2].parse()?,
                    sq[3].parse()?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        let unpack = |g: Vec<GenJson>| g.into_iter().map(|g| (g.letter, g.lift)).collect();
        return Presentation::from_parts(
            GammaKey { p: doc.p, l: doc.l },
            gens_from(Side::H, unpack(doc.hgens))?,
            gens_from(Side::V, unpack(doc.vgens))?,
            squares,
        );
    }

    let mut key = None;
    let mut h = Vec::new();
    let mut v = Vec::new();
    let mut squares = Vec::new();
    for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad line {line:?}"));
        let num = |t: &str| t.parse::<i64>().map_err(|_| bad());
        match toks.as_slice() {
            ["gamma", p, l] => {
                key = Some(GammaKey {
                    p: p.parse().map_err(|_| bad())?,
                    l: l.parse().map_err(|_| bad())?,
                })
            }
            [tag @ ("hgen" | "vgen"), name, "=", a, b, c, d] => {
                let entry = (name.to_string(), [num(a)?, num(b)?, num(c)?, num(d)?]);
                if *tag == "hgen" {
                    h.push(entry);
                } else {
                    v.push(entry);
                }
            }
            ["square", w1, w2, w3, w4] => {
                squares.push([w1.parse()?, w2.parse()?, w3.parse()?, w4.parse()?]);
            }
            _ => return Err(bad()),
        }
    }
    let key = key.ok_or_else(|| Error::Parse("missing gamma header".into()))?;
    Presentation::from_parts(key, gens_from(Side::H, h)?, gens_from(Side::V, v)?, squares)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_counts() {
        for (p, l) in [(3u64, 5u64), (5, 17), (5, 7), (13, 17), (3, 7), (7, 3)] {
            let pres = build_squares(p, l).unwrap();
            assert_eq!(pres.h_rank() as u64, (p + 1) / 2);
            assert_eq!(pres.v_rank() as u64, (l + 1) / 2);
            assert_eq!(pres.squares().len() as u64, (p + 1) * (l + 1) / 4);
            let g = check_link(&pres).unwrap();
            assert_eq!(g.bipartition(), (p as usize + 1, l as usize + 1));
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(build_squares(4, 7), Err(Error::NotOddPrime(4)));
        assert_eq!(build_squares(5, 5), Err(Error::EqualPrimes(5)));
    }

    #[test]
    fn deleted_square_breaks_the_link() {
        let pres = build_squares(3, 5).unwrap();
        let mut sq = pres.squares().to_vec();
        sq.remove(2);
        let Err(Error::LinkViolation(defects)) = check_link_squares(2, 3, &sq) else {
            panic!("expected a link violation");
        };
        assert_eq!(defects.len(), 4);
        assert!(defects.iter().all(|d| d.count == 0));
        let err = Presentation::from_parts(
            pres.key(),
            pres.generators(Side::H).to_vec(),
            pres.generators(Side::V).to_vec(),
            sq,
        );
        assert!(matches!(err, Err(Error::LinkViolation(_))));
    }

    #[test]
    fn duplicated_square_is_reported() {
        let pres = build_squares(3, 5).unwrap();
        let mut sq = pres.squares().to_vec();
        sq[1] = sq[0];
        let Err(Error::LinkViolation(defects)) = check_link_squares(2, 3, &sq) else {
            panic!("expected a link violation");
        };
        assert!(defects.iter().any(|d| d.count == 2));
    }

    #[test]
    fn relators_are_central_with_norm_pl_squared() {
        for (p, l) in [(3u64, 5u64), (5, 17), (5, 7)] {
            let pres = build_squares(p, l).unwrap();
            let pl = BigInt::from(p * l);
            for sq in pres.squares() {
                let q = sq
                    .iter()
                    .fold(Quaternion::one(), |acc, &x| &acc * &pres.lift(x).lift());
                assert!(is_central(&q));
                assert_eq!(q.norm_sq().to_integer(), &pl * &pl);
            }
        }
    }

    #[test]
    fn swap_tables_agree_with_lifts() {
        let pres = build_squares(5, 7).unwrap();
        for h in pres.letters_of(Side::H) {
            for v in pres.letters_of(Side::V) {
                let (v2, h2) = pres.swap_hv(h, v);
                assert_eq!(
                    pres.lift(h).mul(&pres.lift(v)),
                    pres.lift(v2).mul(&pres.lift(h2))
                );
                let (h3, v3) = pres.swap_vh(v, h);
                assert_eq!(
                    pres.lift(v).mul(&pres.lift(h)),
                    pres.lift(h3).mul(&pres.lift(v3))
                );
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        let a = build_squares(3, 5).unwrap();
        let b = build_squares(5, 3).unwrap();
        let flip = |l: Letter| Letter::new(l.side.other(), l.index, l.inverse);
        let transposed: BTreeSet<Square> = a
            .squares()
            .iter()
            .map(|sq| {
                let [h1, v1, h2, v2] = sq.map(flip);
                normalize_square(&[v1, h2, v2, h1])
            })
            .collect();
        let direct: BTreeSet<Square> = b.squares().iter().copied().collect();
        assert_eq!(transposed, direct);
    }

    #[test]
    fn rho_v_is_a_permutation_and_a_homomorphism() {
        let pres = build_squares(3, 5).unwrap();
        let hl = 2 * pres.h_rank();
        let id = rho_v(&pres, &Word::empty(pres.key())).unwrap();
        assert_eq!(id, Permutation::identity(hl));
        for v in pres.letters_of(Side::V) {
            let r = rho_v(&pres, &pres.word(vec![v])).unwrap();
            assert_eq!(r.degree(), hl);
            let r_inv = rho_v(&pres, &pres.word(vec![v.inv()])).unwrap();
            assert!(r.then(&r_inv).is_identity());
            // a^-1 v a' is a single vertical letter
            for s in 0..hl {
                let a = Letter::from_slot(Side::H, s);
                let a2 = Letter::from_slot(Side::H, r.apply(s));
                let prod = pres.lift(a.inv()).mul(&pres.lift(v)).mul(&pres.lift(a2));
                assert_eq!(pres.letter_of(&prod).map(|l| l.side), Some(Side::V));
            }
        }
        let w1 = pres.parse_word("b1 b2^-1").unwrap();
        let w2 = pres.parse_word("b3 b1").unwrap();
        let lhs = rho_v(&pres, &w1.concat(&w2).unwrap()).unwrap();
        let rhs = rho_v(&pres, &w1).unwrap().then(&rho_v(&pres, &w2).unwrap());
        assert_eq!(lhs, rhs);
        assert!(rho_v(&pres, &pres.parse_word("a1").unwrap()).is_err());
    }

    #[test]
    fn export_shapes_and_round_trip() {
        let pres = build_squares(3, 5).unwrap();
        let text = export_presentation(&pres, Format::Text);
        assert_eq!(
            text.lines()
                .filter(|l| l.starts_with("hgen") || l.starts_with("vgen"))
                .count(),
            5
        );
        assert_eq!(text.lines().filter(|l| l.starts_with("square")).count(), 6);
        assert!(text.starts_with("gamma 3 5\nhgen a1 = 1 0 1 1\n"));
        assert_eq!(parse_presentation(&text).unwrap(), pres);
        let json = export_presentation(&pres, Format::Json);
        assert_eq!(parse_presentation(&json).unwrap(), pres);

        let p57 = build_squares(5, 7).unwrap();
        assert_eq!(
            (p57.h_rank(), p57.v_rank(), p57.squares().len()),
            (3, 4, 12)
        );
        let text = export_presentation(&p57, Format::Text);
        assert_eq!(parse_presentation(&text).unwrap(), p57);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_presentation("hgen a1 = 1 0 1 1").is_err());
        assert!(parse_presentation("gamma 3 5\nsquare a1 a1 b1 b1").is_err());
        assert!(parse_presentation("gamma 3 5\nfoo").is_err());
    }
}
