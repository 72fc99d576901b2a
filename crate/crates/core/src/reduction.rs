//! Compiles rational-subset membership into fixed-target submonoid membership.
//!
//! Given a normalized automaton over the generators of a group `G`, [`build_delta`]
//! encodes every state as an element of the free group `F3 = F(x, y, z)` (initial state
//! `x`, final state `y`, the others `z^i x z^-i`) and every transition `p -σ-> q` as
//! `p̃ σ q̃⁻¹ ∈ G * F3`. Then `1 ∈ π(L)` holds exactly when `x y⁻¹` lies in the submonoid
//! generated by these elements, and also exactly when `Sgp(x y⁻¹)` meets it.
//!
//! The instance is then pushed into `A(P4)` through [`crate::raag::p4_star_embedding`]
//! (target `a c a⁻¹ c⁻¹`) and into `B4` through [`crate::braid::droms_embed`] (target `γ0`).

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::automata::{Nfa, NormalizedNfa};
use crate::braid::{droms_embed, garside_normal_form, BraidWord, GarsideNormalForm};
use crate::raag::{p4_conjugate_vertex, p4_star_embedding, Raag};
use crate::words::{
    free_reduce, Alphabet, Canonicalizer, Factor, FreeGroup, FreeProduct, FreeProductElement,
    Letter, Syllable, TrivialGroup, Word,
};
use crate::{Error, Result};

/// Default depth for [`bounded_member`].
pub const DEFAULT_SEARCH_DEPTH: usize = 8;
/// Default cap on distinct elements stored by [`bounded_member`].
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Free basis letters of `F3` inside the right factor.
pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

/// The groups `G` the compiler supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    /// Every generator represents the identity.
    Trivial,
    /// A free group of the given rank.
    Free(usize),
    /// `A(P4)` on `a, b, c, d`.
    P4,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::Trivial => write!(f, "trivial"),
            BaseKind::Free(k) => write!(f, "free:{k}"),
            BaseKind::P4 => write!(f, "p4"),
        }
    }
}

/// A group `G` with its generating alphabet and word-problem kernel.
#[derive(Debug, Clone)]
pub enum BaseGroup {
    Trivial(Alphabet),
    Free(Alphabet),
    P4(Raag),
}

impl BaseGroup {
    pub fn p4() -> Self {
        BaseGroup::P4(Raag::p4())
    }

    pub fn kind(&self) -> BaseKind {
        match self {
            BaseGroup::Trivial(_) => BaseKind::Trivial,
            BaseGroup::Free(a) => BaseKind::Free(a.len()),
            BaseGroup::P4(_) => BaseKind::P4,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            BaseGroup::Trivial(a) | BaseGroup::Free(a) => a,
            BaseGroup::P4(g) => g.graph().vertices(),
        }
    }

    pub fn canonicalizer(&self) -> &dyn Canonicalizer {
        match self {
            BaseGroup::Trivial(_) => &TrivialGroup,
            BaseGroup::Free(_) => &FreeGroup,
            BaseGroup::P4(g) => g,
        }
    }

    /// Interprets an automaton's alphabet as generators of a group of the given kind,
    /// returning the group and the automaton rewritten over its alphabet.
    ///
    /// For `P4` the automaton's letters must be among `a, b, c, d`; they are matched by name.
    pub fn for_automaton(kind: BaseKind, nfa: &Nfa) -> Result<(BaseGroup, Nfa)> {
        match kind {
            BaseKind::Trivial => Ok((BaseGroup::Trivial(nfa.alphabet().clone()), nfa.clone())),
            BaseKind::Free(k) if k == nfa.alphabet().len() => {
                Ok((BaseGroup::Free(nfa.alphabet().clone()), nfa.clone()))
            }
            BaseKind::Free(k) => Err(Error::InvalidArgument(format!(
                "free group of rank {k} but the automaton has {} generators",
                nfa.alphabet().len()
            ))),
            BaseKind::P4 => {
                let group = BaseGroup::p4();
                let target = group.alphabet().clone();
                let map = nfa
                    .alphabet()
                    .symbols()
                    .iter()
                    .map(|s| {
                        target.index_of(s).ok_or_else(|| {
                            Error::InvalidArgument(format!("`{s}` is not a vertex of P4"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let relabeled = nfa.relabel(target, |g| map[g])?;
                Ok((group, relabeled))
            }
        }
    }
}

/// The group an instance lives in.
#[derive(Debug, Clone)]
pub enum Ambient {
    /// `G * F3`; letters `0..k` are `G`'s generators (named `g1..gk`), then `x, y, z`.
    FreeProduct(BaseGroup),
    /// `A(P4)` on `a, b, c, d`.
    P4,
    /// `B4` on `σ1, σ2, σ3` (named `s1..s3`).
    B4,
}

/// Canonical forms used to compare and deduplicate ambient elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Word(Word),
    Braid(GarsideNormalForm),
}

impl Ambient {
    pub fn name(&self) -> String {
        match self {
            Ambient::FreeProduct(g) => format!("G*F3 (G = {})", g.kind()),
            Ambient::P4 => "A(P4)".into(),
            Ambient::B4 => "B4".into(),
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            Ambient::FreeProduct(g) => g.alphabet().len() + 3,
            Ambient::P4 => 4,
            Ambient::B4 => 3,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        let names: Vec<String> = match self {
            Ambient::FreeProduct(g) => (1..=g.alphabet().len())
                .map(|i| format!("g{i}"))
                .chain(["x", "y", "z"].map(String::from))
                .collect(),
            Ambient::P4 => ["a", "b", "c", "d"].map(String::from).to_vec(),
            Ambient::B4 => ["s1", "s2", "s3"].map(String::from).to_vec(),
        };
        Alphabet::new(names).expect("distinct names")
    }

    fn base_len(&self) -> usize {
        match self {
            Ambient::FreeProduct(g) => g.alphabet().len(),
            _ => 0,
        }
    }

    /// Splits a `G * F3` word into syllables over the two factors' own alphabets.
    fn syllables(&self, w: &Word) -> Vec<Syllable> {
        let k = self.base_len();
        let mut out: Vec<Syllable> = Vec::new();
        for &l in w.letters() {
            let (factor, letter) = if l.generator < k {
                (Factor::Left, l)
            } else {
                (
                    Factor::Right,
                    Letter {
                        generator: l.generator - k,
                        inverse: l.inverse,
                    },
                )
            };
            match out.last_mut() {
                Some(s) if s.factor == factor => s.word.push(letter),
                _ => out.push(Syllable::new(factor, Word::new(vec![letter]))),
            }
        }
        out
    }

    fn join(&self, e: &FreeProductElement) -> Word {
        let k = self.base_len();
        let mut out = Word::identity();
        for s in e.syllables() {
            match s.factor {
                Factor::Left => out.extend_from(&s.word),
                Factor::Right => out.extend_from(&s.word.map_generators(|g| g + k)),
            }
        }
        out
    }

    /// Free-product normal form; only meaningful for [`Ambient::FreeProduct`].
    pub fn free_product_form(&self, w: &Word) -> Result<FreeProductElement> {
        match self {
            Ambient::FreeProduct(g) => {
                w.check(self.generator_count())?;
                let fp = FreeProduct::new(g.canonicalizer(), &FreeGroup);
                Ok(fp.reduce(self.syllables(w)))
            }
            other => Err(Error::WrongAmbient {
                expected: "G*F3".into(),
                found: other.name(),
            }),
        }
    }

    pub fn normal_form(&self, w: &Word) -> Result<NormalForm> {
        w.check(self.generator_count())?;
        Ok(match self {
            Ambient::FreeProduct(_) => NormalForm::Word(self.join(&self.free_product_form(w)?)),
            Ambient::P4 => NormalForm::Word(Raag::p4().canonical_form(w)?),
            Ambient::B4 => NormalForm::Braid(garside_normal_form(&BraidWord::new(4, w.clone())?)),
        })
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// A short word for the same element, used as the running product in searches.
    fn representative(&self, w: &Word, nf: &NormalForm) -> Word {
        match nf {
            NormalForm::Word(c) => c.clone(),
            NormalForm::Braid(_) => free_reduce(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// Is the target in `Mon(Δ)`?
    FixedTargetSubmonoid,
    /// Does `Sgp(Δ)` meet `Sgp(target)`?
    SemigroupIntersection,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::FixedTargetSubmonoid => write!(f, "fixed-target submonoid"),
            InstanceKind::SemigroupIntersection => write!(f, "semigroup intersection"),
        }
    }
}

/// A compiled membership instance: generators `Δ`, a target, and optionally a witness
/// (indices into `Δ` whose product equals the target).
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    ambient: Ambient,
    generators: Vec<Word>,
    target: Word,
    kind: InstanceKind,
    witness: Option<Vec<usize>>,
}

impl ReductionInstance {
    /// Validates every word against the ambient alphabet and checks the witness, if any,
    /// with the ambient word-problem kernel.
    pub fn new(
        ambient: Ambient,
        generators: Vec<Word>,
        target: Word,
        kind: InstanceKind,
        witness: Option<Vec<usize>>,
    ) -> Result<Self> {
        let size = ambient.generator_count();
        for w in generators.iter().chain(std::iter::once(&target)) {
            w.check(size)?;
        }
        let inst = Self {
            ambient,
            generators,
            target,
            kind,
            witness: None,
        };
        match witness {
            Some(w) => inst.with_witness(w),
            None => Ok(inst),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.witness.as_deref()
    }

    /// The product `Δ[i1] Δ[i2] ⋯` as an unreduced word.
    pub fn product(&self, indices: &[usize]) -> Result<Word> {
        let mut out = Word::identity();
        for &i in indices {
            let g = self.generators.get(i).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "generator index {i} out of range ({})",
                    self.generators.len()
                ))
            })?;
            out.extend_from(g);
        }
        Ok(out)
    }

    /// Attaches a witness after checking that its product equals the target.
    pub fn with_witness(mut self, witness: Vec<usize>) -> Result<Self> {
        let product = self.product(&witness)?;
        if !self.ambient.equal(&product, &self.target)? {
            return Err(Error::WitnessVerification(format!(
                "the product of generators {witness:?} differs from the target in {}",
                self.ambient.name()
            )));
        }
        self.witness = Some(witness);
        Ok(self)
    }
}

/// Images of the automaton's states in `F3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateEncoding(Vec<Word>);

impl StateEncoding {
    /// `q0 ↦ x`, `qf ↦ y`, and the `i`-th remaining state (declaration order) `↦ z^i x z^-i`.
    pub fn new(nfa: &NormalizedNfa) -> Self {
        let mut next = 0i64;
        let images = (0..nfa.nfa().state_count())
            .map(|s| {
                if s == nfa.initial() {
                    Word::generator(X)
                } else if s == nfa.final_state() {
                    Word::generator(Y)
                } else {
                    next += 1;
                    let zi = Word::generator(Z).pow(next);
                    let mut w = zi.concat(&Word::generator(X));
                    w.extend_from(&zi.inverse());
                    w
                }
            })
            .collect();
        StateEncoding(images)
    }

    pub fn image(&self, state: usize) -> &Word {
        &self.0[state]
    }

    pub fn images(&self) -> &[Word] {
        &self.0
    }
}

/// Builds `Δ = { p̃ σ q̃⁻¹ : p -σ-> q }` in `G * F3` (one generator per transition, in
/// transition order; ε-transitions give `p̃ q̃⁻¹`) with target `x y⁻¹`.
pub fn build_delta(nfa: &NormalizedNfa, base: BaseGroup) -> Result<ReductionInstance> {
    if nfa.nfa().alphabet() != base.alphabet() {
        return Err(Error::InvalidArgument(
            "the automaton's alphabet differs from the group's generators".into(),
        ));
    }
    let k = base.alphabet().len();
    let encoding = StateEncoding::new(nfa);
    let lift = |w: &Word| w.map_generators(|g| g + k);
    let generators = nfa
        .nfa()
        .transitions()
        .iter()
        .map(|t| {
            let mut w = lift(encoding.image(t.from));
            if let Some(l) = t.label {
                w.push(l);
            }
            w.extend_from(&lift(&encoding.image(t.to).inverse()));
            free_reduce(&w)
        })
        .collect();
    let target = Word::new(vec![Letter::pos(k + X), Letter::neg(k + Y)]);
    ReductionInstance::new(
        Ambient::FreeProduct(base),
        generators,
        target,
        InstanceKind::FixedTargetSubmonoid,
        None,
    )
}

/// Turns an accepting path of a word that is trivial in `G` into witness indices of the
/// instance built by [`build_delta`], verifying that the product reduces to `x y⁻¹`.
pub fn extract_witness(
    nfa: &NormalizedNfa,
    inst: &ReductionInstance,
    path: &[usize],
) -> Result<Vec<usize>> {
    if !matches!(inst.ambient, Ambient::FreeProduct(_)) {
        return Err(Error::WrongAmbient {
            expected: "G*F3".into(),
            found: inst.ambient.name(),
        });
    }
    if inst.generators.len() != nfa.nfa().transitions().len() {
        return Err(Error::InvalidArgument(
            "instance was not built from this automaton".into(),
        ));
    }
    if !nfa.nfa().is_accepting_path(path) {
        return Err(Error::InvalidPath(format!(
            "{path:?} is not an accepting path"
        )));
    }
    let product = inst.product(path)?;
    let got = inst.ambient.free_product_form(&product)?;
    let want = inst.ambient.free_product_form(&inst.target)?;
    if got != want {
        return Err(Error::WitnessVerification(
            "the path's label is not trivial in G, so the product is not x y^-1".into(),
        ));
    }
    Ok(path.to_vec())
}

/// Rewrites a `G * F3` instance into `A(P4)`: `x, y, z ↦ aca⁻¹, c, x_{-2}`, and `G`'s
/// generators onto further vertices of the conjugate path (`g_i ↦ x_{3+i}` for `A(P4)`,
/// `g_i ↦ x_{2+2i}` for a free group, the identity for the trivial group). Output words
/// are canonical in `A(P4)`.
pub fn instantiate_in_p4(inst: &ReductionInstance) -> Result<ReductionInstance> {
    let base = match &inst.ambient {
        Ambient::FreeProduct(g) => g,
        other => {
            return Err(Error::WrongAmbient {
                expected: "G*F3".into(),
                found: other.name(),
            })
        }
    };
    let k = base.alphabet().len();
    let star = p4_star_embedding();
    let base_image = |i: usize| match base.kind() {
        BaseKind::P4 => star.g[i].clone(),
        BaseKind::Free(_) => p4_conjugate_vertex(2 + 2 * (i as i64 + 1)),
        BaseKind::Trivial => Word::identity(),
    };
    let image = |g: usize| match g.checked_sub(k) {
        None => base_image(g),
        Some(X) => star.x.clone(),
        Some(Y) => star.y.clone(),
        Some(_) => star.z.clone(),
    };
    let p4 = Raag::p4();
    let map = |w: &Word| p4.canonical_form(&w.substitute(image));
    let generators = inst
        .generators
        .iter()
        .map(map)
        .collect::<Result<Vec<_>>>()?;
    let target = map(&inst.target)?;
    ReductionInstance::new(
        Ambient::P4,
        generators,
        target,
        inst.kind,
        inst.witness.clone(),
    )
}

/// Pushes an `A(P4)` instance into `B4` through the embedding `a, b, c, d ↦ σ2², (σ2σ3σ2)², σ3², σ1²`.
pub fn compile_to_b4(inst: &ReductionInstance) -> Result<ReductionInstance> {
    if !matches!(inst.ambient, Ambient::P4) {
        return Err(Error::WrongAmbient {
            expected: "A(P4)".into(),
            found: inst.ambient.name(),
        });
    }
    let map = |w: &Word| droms_embed(w).map(|b| b.word().clone());
    let generators = inst
        .generators
        .iter()
        .map(map)
        .collect::<Result<Vec<_>>>()?;
    let target = map(&inst.target)?;
    ReductionInstance::new(
        Ambient::B4,
        generators,
        target,
        inst.kind,
        inst.witness.clone(),
    )
}

/// The same generators and target read as "does `Sgp(Δ)` meet `Sgp(target)`?". For
/// instances produced by [`build_delta`] both questions have the same answer.
pub fn make_intersection_instance(inst: &ReductionInstance) -> Result<ReductionInstance> {
    if inst.kind != InstanceKind::FixedTargetSubmonoid {
        return Err(Error::WrongKind {
            expected: InstanceKind::FixedTargetSubmonoid.to_string(),
            found: inst.kind.to_string(),
        });
    }
    Ok(ReductionInstance {
        kind: InstanceKind::SemigroupIntersection,
        ..inst.clone()
    })
}

/// Which instance to emit from [`compile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Product,
    P4,
    B4,
}

/// Full pipeline: interpret, normalize, build `Δ`, optionally attach a witness for an
/// accepted word trivial in `G`, then push to the requested stage.
pub fn compile(
    nfa: &Nfa,
    kind: BaseKind,
    stage: Stage,
    witness_word: Option<&Word>,
) -> Result<ReductionInstance> {
    let (base, nfa) = BaseGroup::for_automaton(kind, nfa)?;
    let normalized = crate::automata::normalize(&nfa);
    let mut inst = build_delta(&normalized, base)?;
    if let Some(w) = witness_word {
        let path = normalized.nfa().accepting_path(w).ok_or_else(|| {
            Error::WitnessVerification("the witness word is not accepted by the automaton".into())
        })?;
        let witness = extract_witness(&normalized, &inst, &path)?;
        inst = inst.with_witness(witness)?;
    }
    match stage {
        Stage::Product => Ok(inst),
        Stage::P4 => instantiate_in_p4(&inst),
        Stage::B4 => compile_to_b4(&instantiate_in_p4(&inst)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `Δ[witness…] = target^power`, with the witness least in length-then-lexicographic order.
    Found { witness: Vec<usize>, power: usize },
    /// No product of at most `depth` generators hits the target. Not a proof of non-membership.
    NotFoundWithin(usize),
}

/// Breadth-first search over products of at most `depth` generators, deduplicated by
/// canonical form. Semigroup-intersection instances compare nonempty products against
/// `target^M` for `1 <= M <= depth`.
pub fn bounded_member(inst: &ReductionInstance, depth: usize, cap: usize) -> Result<SearchOutcome> {
    if depth == 0 {
        return Err(Error::InvalidArgument(
            "search depth must be positive".into(),
        ));
    }
    let ambient = &inst.ambient;
    let mut targets: HashMap<NormalForm, usize> = HashMap::new();
    match inst.kind {
        InstanceKind::FixedTargetSubmonoid => {
            targets.insert(ambient.normal_form(&inst.target)?, 1);
        }
        InstanceKind::SemigroupIntersection => {
            for m in (1..=depth).rev() {
                targets.insert(ambient.normal_form(&inst.target.pow(m as i64))?, m);
            }
        }
    }
    let identity = ambient.normal_form(&Word::identity())?;
    let mut seen: HashSet<NormalForm> = HashSet::new();
    if inst.kind == InstanceKind::FixedTargetSubmonoid {
        if targets.contains_key(&identity) {
            return Ok(SearchOutcome::Found {
                witness: Vec::new(),
                power: 1,
            });
        }
        seen.insert(identity);
    }
    let mut frontier: Vec<(Word, Vec<usize>)> = vec![(Word::identity(), Vec::new())];
    for _ in 0..depth {
        let candidates: Vec<(NormalForm, Word, Vec<usize>)> = frontier
            .par_iter()
            .flat_map_iter(|(rep, seq)| {
                inst.generators.iter().enumerate().map(move |(i, g)| {
                    let product = rep.concat(g);
                    let nf = ambient.normal_form(&product).expect("validated words");
                    let rep = ambient.representative(&product, &nf);
                    let mut seq = seq.clone();
                    seq.push(i);
                    (nf, rep, seq)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (nf, rep, seq) in candidates {
            if let Some(&power) = targets.get(&nf) {
                return Ok(SearchOutcome::Found {
                    witness: seq,
                    power,
                });
            }
            if seen.insert(nf) {
                if seen.len() > cap {
                    return Err(Error::ResourceLimit { limit: cap });
                }
                next.push((rep, seq));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(SearchOutcome::NotFoundWithin(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{normalize, Nfa};
    use crate::braid::{braids_equal, gamma0};

    fn free2() -> Alphabet {
        Alphabet::new(["s", "t"]).unwrap()
    }

    fn fp_word(k: usize, f3: &[i32]) -> Word {
        Word::from_signed(f3).unwrap().map_generators(|g| g + k)
    }

    fn normalized(nfa: Nfa) -> NormalizedNfa {
        NormalizedNfa::try_from_nfa(nfa).unwrap()
    }

    /// q0 -s-> m -s^-1-> qf over F2.
    fn chain() -> NormalizedNfa {
        normalized(
            Nfa::from_names(
                &["q0", "m", "qf"],
                &["s", "t"],
                &[("q0", "s", "m"), ("m", "s^-1", "qf")],
                "q0",
                &["qf"],
            )
            .unwrap(),
        )
    }

    #[test]
    fn state_encoding_follows_declaration_order() {
        let nfa = normalized(
            Nfa::from_names(&["m1", "q0", "m2", "qf"], &["s"], &[], "q0", &["qf"]).unwrap(),
        );
        let enc = StateEncoding::new(&nfa);
        assert_eq!(enc.image(1), &Word::generator(X));
        assert_eq!(enc.image(3), &Word::generator(Y));
        assert_eq!(enc.image(0), &Word::from_signed(&[3, 1, -3]).unwrap());
        assert_eq!(
            enc.image(2),
            &Word::from_signed(&[3, 3, 1, -3, -3]).unwrap()
        );
    }

    #[test]
    fn single_transition_delta() {
        let nfa = normalized(
            Nfa::from_names(
                &["q0", "qf"],
                &["s", "t"],
                &[("q0", "t", "qf")],
                "q0",
                &["qf"],
            )
            .unwrap(),
        );
        let inst = build_delta(&nfa, BaseGroup::Free(free2())).unwrap();
        let mut expected = fp_word(2, &[1]);
        expected.push(Letter::pos(1));
        expected.extend_from(&fp_word(2, &[-2]));
        assert_eq!(inst.generators(), &[expected]);
        assert_eq!(inst.target(), &fp_word(2, &[1, -2]));
        assert_eq!(inst.kind(), InstanceKind::FixedTargetSubmonoid);
    }

    #[test]
    fn epsilon_transition_delta() {
        let nfa = normalize(&Nfa::from_names(&["q0"], &[], &[], "q0", &["q0"]).unwrap());
        let inst = build_delta(
            &nfa,
            BaseGroup::Trivial(Alphabet::new(Vec::<String>::new()).unwrap()),
        )
        .unwrap();
        assert_eq!(inst.generators(), &[fp_word(0, &[1, -2])]);
        assert_eq!(inst.target(), &fp_word(0, &[1, -2]));
        let w = extract_witness(&nfa, &inst, &[0]).unwrap();
        assert_eq!(w, vec![0]);
    }

    #[test]
    fn chain_delta_and_witness() {
        let nfa = chain();
        let inst = build_delta(&nfa, BaseGroup::Free(free2())).unwrap();
        // x s (z x z^-1)^-1 and (z x z^-1) s^-1 y^-1
        let mut g0 = fp_word(2, &[1]);
        g0.push(Letter::pos(0));
        g0.extend_from(&fp_word(2, &[3, -1, -3]));
        let mut g1 = fp_word(2, &[3, 1, -3]);
        g1.push(Letter::neg(0));
        g1.extend_from(&fp_word(2, &[-2]));
        assert_eq!(inst.generators(), &[g0, g1]);
        let w = extract_witness(&nfa, &inst, &[0, 1]).unwrap();
        assert_eq!(w, vec![0, 1]);
        let nf = inst
            .ambient()
            .free_product_form(&inst.product(&w).unwrap())
            .unwrap();
        assert_eq!(
            nf.syllables(),
            &[Syllable::right(Word::from_signed(&[1, -2]).unwrap())]
        );
    }

    #[test]
    fn fp_reduce_of_one_transition_product() {
        // x σ y^-1 keeps σ unless it is trivial in G
        let nfa = normalized(
            Nfa::from_names(&["q0", "qf"], &["s"], &[("q0", "s", "qf")], "q0", &["qf"]).unwrap(),
        );
        let a = Alphabet::new(["s"]).unwrap();
        let free = build_delta(&nfa, BaseGroup::Free(a.clone())).unwrap();
        let nf = free
            .ambient()
            .free_product_form(&free.generators()[0])
            .unwrap();
        assert_eq!(
            nf.syllables(),
            &[
                Syllable::right(Word::generator(X)),
                Syllable::left(Word::generator(0)),
                Syllable::right(Word::new(vec![Letter::neg(Y)]))
            ]
        );
        let trivial = build_delta(&nfa, BaseGroup::Trivial(a)).unwrap();
        let nf = trivial
            .ambient()
            .free_product_form(&trivial.generators()[0])
            .unwrap();
        assert_eq!(
            nf.syllables(),
            &[Syllable::right(Word::from_signed(&[1, -2]).unwrap())]
        );
    }

    #[test]
    fn extract_witness_errors() {
        let nfa = chain();
        let inst = build_delta(&nfa, BaseGroup::Free(free2())).unwrap();
        assert!(matches!(
            extract_witness(&nfa, &inst, &[0]),
            Err(Error::InvalidPath(_))
        ));
        assert!(matches!(
            extract_witness(&nfa, &inst, &[1, 0]),
            Err(Error::InvalidPath(_))
        ));
        let other = normalized(
            Nfa::from_names(
                &["q0", "m", "qf"],
                &["s", "t"],
                &[("q0", "s", "m"), ("m", "t", "qf")],
                "q0",
                &["qf"],
            )
            .unwrap(),
        );
        let inst = build_delta(&other, BaseGroup::Free(free2())).unwrap();
        assert!(matches!(
            extract_witness(&other, &inst, &[0, 1]),
            Err(Error::WitnessVerification(_))
        ));
    }

    #[test]
    fn build_delta_requires_matching_alphabet() {
        let nfa = chain();
        let err = build_delta(&nfa, BaseGroup::Free(Alphabet::new(["s"]).unwrap()));
        assert!(err.is_err());
    }

    /// Five-state automaton over A(P4) reading a b a^-1 b^-1 letter by letter.
    fn p4_commutator_automaton() -> NormalizedNfa {
        normalized(
            Nfa::from_names(
                &["q0", "q1", "q2", "q3", "q4"],
                &["a", "b", "c", "d"],
                &[
                    ("q0", "a", "q1"),
                    ("q1", "b", "q2"),
                    ("q2", "a^-1", "q3"),
                    ("q3", "b^-1", "q4"),
                ],
                "q0",
                &["q4"],
            )
            .unwrap(),
        )
    }

    #[test]
    fn p4_witness_uses_raag_kernel() {
        let nfa = p4_commutator_automaton();
        let inst = build_delta(&nfa, BaseGroup::p4()).unwrap();
        let w = extract_witness(&nfa, &inst, &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.len(), 4);
        let inst = inst.with_witness(w).unwrap();

        let p4 = instantiate_in_p4(&inst).unwrap();
        let ac = crate::braid::p4_commutator_ac();
        assert_eq!(p4.target(), &ac);
        assert!(p4
            .ambient()
            .equal(&p4.product(p4.witness().unwrap()).unwrap(), &ac)
            .unwrap());

        let b4 = compile_to_b4(&p4).unwrap();
        assert_eq!(b4.target().to_signed(), gamma0().to_signed());
        let product = BraidWord::new(4, b4.product(b4.witness().unwrap()).unwrap()).unwrap();
        assert!(braids_equal(&product, &gamma0()));
    }

    #[test]
    fn instantiate_rewrites_generators() {
        let nfa = p4_commutator_automaton();
        let inst = build_delta(&nfa, BaseGroup::p4()).unwrap();
        let p4 = instantiate_in_p4(&inst).unwrap();
        let star = p4_star_embedding();
        // first generator is x g1 (z x z^-1)^-1
        let mut expected = star.x.concat(&star.g[0]);
        expected.extend_from(&star.z.concat(&star.x).concat(&star.z.inverse()).inverse());
        assert_eq!(
            p4.generators()[0],
            Raag::p4().canonical_form(&expected).unwrap()
        );
        assert!(instantiate_in_p4(&p4).is_err());
        assert!(compile_to_b4(&inst).is_err());
    }

    #[test]
    fn epsilon_generator_maps_to_commutator() {
        let inst = compile(
            &Nfa::from_names(&["q0"], &[], &[], "q0", &["q0"]).unwrap(),
            BaseKind::Trivial,
            Stage::P4,
            None,
        )
        .unwrap();
        let ac = crate::braid::p4_commutator_ac();
        assert_eq!(inst.generators(), std::slice::from_ref(&ac));
        assert_eq!(inst.target(), &ac);
    }

    #[test]
    fn b4_identity_target() {
        let inst = ReductionInstance::new(
            Ambient::P4,
            vec![],
            Word::identity(),
            InstanceKind::FixedTargetSubmonoid,
            None,
        )
        .unwrap();
        assert!(compile_to_b4(&inst).unwrap().target().is_empty());
    }

    #[test]
    fn intersection_instance() {
        let inst = build_delta(&chain(), BaseGroup::Free(free2())).unwrap();
        let inter = make_intersection_instance(&inst).unwrap();
        assert_eq!(inter.kind(), InstanceKind::SemigroupIntersection);
        assert_eq!(inter.generators(), inst.generators());
        assert_eq!(inter.target(), inst.target());
        assert!(make_intersection_instance(&inter).is_err());
        let p4 = make_intersection_instance(&instantiate_in_p4(&inst).unwrap()).unwrap();
        assert_eq!(p4.target(), &crate::braid::p4_commutator_ac());
    }

    #[test]
    fn search_target_in_delta() {
        let inst = build_delta(&chain(), BaseGroup::Free(free2())).unwrap();
        let mut gens = inst.generators().to_vec();
        gens.push(inst.target().clone());
        let inst = ReductionInstance::new(
            inst.ambient().clone(),
            gens,
            inst.target().clone(),
            inst.kind(),
            None,
        )
        .unwrap();
        assert_eq!(
            bounded_member(&inst, 3, DEFAULT_STATE_CAP).unwrap(),
            SearchOutcome::Found {
                witness: vec![2],
                power: 1
            }
        );
    }

    #[test]
    fn search_finds_single_generator_at_depth_one() {
        let base = BaseGroup::Trivial(Alphabet::new(Vec::<String>::new()).unwrap());
        let t = fp_word(0, &[1, -2]);
        let inst = ReductionInstance::new(
            Ambient::FreeProduct(base),
            vec![fp_word(0, &[3]), t.clone()],
            t,
            InstanceKind::FixedTargetSubmonoid,
            None,
        )
        .unwrap();
        assert_eq!(
            bounded_member(&inst, 1, 10).unwrap(),
            SearchOutcome::Found {
                witness: vec![1],
                power: 1
            }
        );
    }

    #[test]
    fn search_respects_z_obstruction() {
        let base = BaseGroup::Trivial(Alphabet::new(Vec::<String>::new()).unwrap());
        let inst = ReductionInstance::new(
            Ambient::FreeProduct(base),
            vec![fp_word(0, &[1, 3, -2])],
            fp_word(0, &[1, -2]),
            InstanceKind::FixedTargetSubmonoid,
            None,
        )
        .unwrap();
        assert_eq!(
            bounded_member(&inst, 6, DEFAULT_STATE_CAP).unwrap(),
            SearchOutcome::NotFoundWithin(6)
        );
        assert!(bounded_member(&inst, 0, 10).is_err());
    }

    #[test]
    fn search_finds_compiled_witness_length() {
        let inst = build_delta(&chain(), BaseGroup::Free(free2())).unwrap();
        assert_eq!(
            bounded_member(&inst, 4, DEFAULT_STATE_CAP).unwrap(),
            SearchOutcome::Found {
                witness: vec![0, 1],
                power: 1
            }
        );
        let b4 = compile_to_b4(&instantiate_in_p4(&inst).unwrap()).unwrap();
        assert_eq!(
            bounded_member(&b4, 2, DEFAULT_STATE_CAP).unwrap(),
            SearchOutcome::Found {
                witness: vec![0, 1],
                power: 1
            }
        );
    }

    #[test]
    fn search_intersection_uses_powers() {
        let base = BaseGroup::Trivial(Alphabet::new(Vec::<String>::new()).unwrap());
        let t = fp_word(0, &[1, -2]);
        let inst = ReductionInstance::new(
            Ambient::FreeProduct(base),
            vec![t.pow(2)],
            t,
            InstanceKind::SemigroupIntersection,
            None,
        )
        .unwrap();
        assert_eq!(
            bounded_member(&inst, 2, 100).unwrap(),
            SearchOutcome::Found {
                witness: vec![0],
                power: 2
            }
        );
        let mono = ReductionInstance {
            kind: InstanceKind::FixedTargetSubmonoid,
            ..inst
        };
        assert_eq!(
            bounded_member(&mono, 3, 100).unwrap(),
            SearchOutcome::NotFoundWithin(3)
        );
    }

    #[test]
    fn search_cap_is_enforced() {
        let base = BaseGroup::Trivial(Alphabet::new(Vec::<String>::new()).unwrap());
        let inst = ReductionInstance::new(
            Ambient::FreeProduct(base),
            vec![fp_word(0, &[1]), fp_word(0, &[2]), fp_word(0, &[3])],
            fp_word(0, &[-1]),
            InstanceKind::FixedTargetSubmonoid,
            None,
        )
        .unwrap();
        assert_eq!(
            bounded_member(&inst, 5, 20),
            Err(Error::ResourceLimit { limit: 20 })
        );
    }

    #[test]
    fn witness_mismatch_is_rejected() {
        let inst = build_delta(&chain(), BaseGroup::Free(free2())).unwrap();
        assert!(matches!(
            inst.clone().with_witness(vec![0]),
            Err(Error::WitnessVerification(_))
        ));
        assert!(inst.with_witness(vec![0, 1]).is_ok());
    }
}
