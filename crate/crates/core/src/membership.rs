//! Class-operator membership: `S`, `H`, `HS`, `SP`, `SP⁺`, the variety test
//! `A ∈ HSP(B)`, decomposition against an inventory of subdirectly
//! irreducibles, and the trivial-subgroup condition on idempotent-generated
//! subsemigroups.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{FiniteAlgebra, Mapping};
use crate::closure::{closure_mask, subuniverses_up_to, all_subuniverses, Product};
use crate::congruence::subdirect_decomposition;
use crate::error::{Error, Result};
use crate::freealg::FreeCaps;
use crate::hom::{find_homomorphism, find_separating_homomorphism, HomMode};
use crate::term::Term;

/// A class operator applied to a finite list of algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassOperator {
    S,
    H,
    HS,
    SP,
    /// `SP` restricted to nonempty products: one-element algebras need a
    /// homomorphism into some listed algebra.
    SPPlus,
}

impl ClassOperator {
    pub const ALL: [ClassOperator; 5] = [
        ClassOperator::S,
        ClassOperator::H,
        ClassOperator::HS,
        ClassOperator::SP,
        ClassOperator::SPPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassOperator::S => "S",
            ClassOperator::H => "H",
            ClassOperator::HS => "HS",
            ClassOperator::SP => "SP",
            ClassOperator::SPPlus => "SP+",
        }
    }

    pub fn parse(s: &str) -> Option<ClassOperator> {
        ClassOperator::ALL.into_iter().find(|op| op.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for ClassOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A homomorphism into or out of the `index`-th listed algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedHom {
    pub index: usize,
    pub hom: Mapping,
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `S`: an embedding of `A` into a listed algebra.
    Embedding(IndexedHom),
    /// `H`/`HS`: a surjection onto `A` from the subalgebra of a listed algebra
    /// on `subuniverse` (the whole algebra for `H`). The mapping is indexed by
    /// position in `subuniverse`.
    Surjection { index: usize, subuniverse: Vec<usize>, hom: Mapping },
    /// `SP`/`SP⁺`: homomorphisms jointly separating all pairs.
    Separating(Vec<IndexedHom>),
    /// `SP`: no homomorphism separates this pair.
    Inseparable(usize, usize),
    /// Exhaustive search found nothing.
    NoHomomorphism,
    /// `HSP`: `A` is a homomorphic image of the subalgebra of the power of
    /// `B` generated by the projections paired with `generators`.
    FreeImage { generators: Vec<usize>, free_size: usize },
    /// `lhs ≈ rhs` holds in the reference algebras and fails in `A` at
    /// `assignment`.
    FailingEquation { lhs: Term, rhs: Term, assignment: Vec<usize> },
    /// Every subdirectly irreducible factor embeds into a listed algebra.
    Factors(Vec<FactorEmbedding>),
    /// The factor separating this pair embeds nowhere.
    UnembeddableFactor { pair: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorEmbedding {
    pub pair: (usize, usize),
    pub embedding: IndexedHom,
}

/// Outcome of a membership decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub holds: bool,
    pub witness: Witness,
    /// False when a negative answer rests on a search that was not exhaustive.
    pub exhaustive: bool,
    pub report: String,
}

impl MembershipVerdict {
    fn yes(witness: Witness, report: String) -> Self {
        MembershipVerdict {
            holds: true,
            witness,
            exhaustive: true,
            report,
        }
    }

    fn no(witness: Witness, report: String) -> Self {
        MembershipVerdict {
            holds: false,
            witness,
            exhaustive: true,
            report,
        }
    }
}

/// Subuniverse enumeration limits for `HS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HsCaps {
    /// Algebras up to this size have all subsets closed.
    pub exhaustive_size: usize,
    /// Larger algebras only use subsets of at most this many generators.
    pub max_generators: usize,
}

impl Default for HsCaps {
    fn default() -> Self {
        HsCaps {
            exhaustive_size: 8,
            max_generators: 3,
        }
    }
}

fn check_signatures(a: &FiniteAlgebra, bs: &[FiniteAlgebra]) -> Result<()> {
    bs.iter().try_for_each(|b| a.same_signature(b))
}

/// Decides `A ∈ op(Bs)`.
pub fn operator_membership(
    a: &FiniteAlgebra,
    bs: &[FiniteAlgebra],
    op: ClassOperator,
    caps: HsCaps,
) -> Result<MembershipVerdict> {
    check_signatures(a, bs)?;
    Ok(match op {
        ClassOperator::S => {
            for (index, b) in bs.iter().enumerate() {
                if let Some(hom) = find_homomorphism(a, b, HomMode::Injective, &[]) {
                    return Ok(MembershipVerdict::yes(
                        Witness::Embedding(IndexedHom { index, hom }),
                        format!("embeds into algebra {index}"),
                    ));
                }
            }
            MembershipVerdict::no(Witness::NoHomomorphism, "no injective homomorphism".into())
        }
        ClassOperator::H => {
            for (index, b) in bs.iter().enumerate() {
                if let Some(hom) = find_homomorphism(b, a, HomMode::Surjective, &[]) {
                    return Ok(MembershipVerdict::yes(
                        Witness::Surjection {
                            index,
                            subuniverse: (0..b.size()).collect(),
                            hom,
                        },
                        format!("image of algebra {index}"),
                    ));
                }
            }
            MembershipVerdict::no(Witness::NoHomomorphism, "no surjective homomorphism".into())
        }
        ClassOperator::HS => hs_membership(a, bs, caps)?,
        ClassOperator::SP | ClassOperator::SPPlus => sp_membership(a, bs, op == ClassOperator::SPPlus),
    })
}

fn hs_membership(a: &FiniteAlgebra, bs: &[FiniteAlgebra], caps: HsCaps) -> Result<MembershipVerdict> {
    let mut exhaustive = true;
    let mut tried = 0usize;
    for (index, b) in bs.iter().enumerate() {
        let subs = if b.size() <= caps.exhaustive_size {
            all_subuniverses(b)
        } else {
            exhaustive = false;
            subuniverses_up_to(b, caps.max_generators)
        };
        for sub in subs.into_iter().filter(|s| s.len() >= a.size()) {
            tried += 1;
            let (alg, _) = b.restrict(&sub)?;
            if let Some(hom) = find_homomorphism(&alg, a, HomMode::Surjective, &[]) {
                return Ok(MembershipVerdict::yes(
                    Witness::Surjection {
                        index,
                        subuniverse: sub,
                        hom,
                    },
                    format!("image of a subalgebra of algebra {index}; {tried} subuniverses tried"),
                ));
            }
        }
    }
    let mut v = MembershipVerdict::no(
        Witness::NoHomomorphism,
        format!("{tried} subuniverses tried{}", if exhaustive { "" } else { " (not exhaustive)" }),
    );
    v.exhaustive = exhaustive;
    Ok(v)
}

fn sp_membership(a: &FiniteAlgebra, bs: &[FiniteAlgebra], plus: bool) -> MembershipVerdict {
    let mut homs: Vec<IndexedHom> = Vec::new();
    for x in 0..a.size() {
        for y in x + 1..a.size() {
            if homs.iter().any(|h| h.hom.get(x) != h.hom.get(y)) {
                continue;
            }
            let found = bs
                .iter()
                .enumerate()
                .find_map(|(index, b)| find_separating_homomorphism(a, b, x, y).map(|hom| IndexedHom { index, hom }));
            match found {
                Some(h) => homs.push(h),
                None => {
                    return MembershipVerdict::no(Witness::Inseparable(x, y), format!("no homomorphism separates {x} and {y}"))
                }
            }
        }
    }
    if plus && homs.is_empty() {
        let any = bs
            .iter()
            .enumerate()
            .find_map(|(index, b)| find_homomorphism(a, b, HomMode::Any, &[]).map(|hom| IndexedHom { index, hom }));
        match any {
            Some(h) => homs.push(h),
            None => return MembershipVerdict::no(Witness::NoHomomorphism, "no homomorphism at all".into()),
        }
    }
    let report = format!("{} separating homomorphisms", homs.len());
    MembershipVerdict::yes(Witness::Separating(homs), report)
}

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subalgebra most, ties to the least index.
pub fn greedy_generators(a: &FiniteAlgebra) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = closure_mask(a, &gens).iter().filter(|&&b| b).count();
    while covered < a.size() {
        let mut best = (0, usize::MAX);
        for x in 0..a.size() {
            gens.push(x);
            let c = closure_mask(a, &gens).iter().filter(|&&b| b).count();
            gens.pop();
            if c > best.0 {
                best = (c, x);
            }
        }
        gens.push(best.1);
        covered = best.0;
    }
    gens
}

/// Decides `A ∈ HSP(B)` by checking that the projections of `B^{B^n}`
/// paired with a generating tuple of `A` generate the graph of a function.
pub fn in_hsp(a: &FiniteAlgebra, b: &FiniteAlgebra, caps: FreeCaps) -> Result<MembershipVerdict> {
    a.same_signature(b)?;
    let gens = greedy_generators(a);
    let n = gens.len();
    let width = u32::try_from(n)
        .ok()
        .and_then(|k| b.size().checked_pow(k))
        .filter(|&w| w <= caps.max_vector)
        .ok_or_else(|| Error::CapExceeded {
            what: "term-function vector length",
            limit: caps.max_vector,
            progress: format!("{n} generators needed"),
        })?;
    let mut coords: Vec<&FiniteAlgebra> = vec![b; width];
    coords.push(a);
    let mut vectors = vec![Vec::with_capacity(width + 1); n];
    crate::algebra::for_each_tuple(b.size(), n, |assignment| {
        for (v, &x) in vectors.iter_mut().zip(assignment) {
            v.push(x);
        }
    });
    for (v, &g) in vectors.iter_mut().zip(&gens) {
        v.push(g);
    }
    let generated = Product::new(coords)?.generate(&vectors, caps.max_size)?;
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for (i, v) in generated.elements.iter().enumerate() {
        let (free, value) = v.split_at(width);
        match seen.get(free) {
            Some(&j) if generated.elements[j][width] != value[0] => {
                let report = format!("{} elements generated before the conflict", generated.len());
                return Ok(MembershipVerdict::no(
                    Witness::FailingEquation {
                        lhs: generated.witness(j),
                        rhs: generated.witness(i),
                        assignment: gens,
                    },
                    report,
                ));
            }
            Some(_) => {}
            None => {
                seen.insert(free, i);
            }
        }
    }
    let free_size = seen.len();
    Ok(MembershipVerdict::yes(
        Witness::FreeImage {
            generators: gens,
            free_size,
        },
        format!("image of a {n}-generated free algebra with {free_size} elements"),
    ))
}

/// Checks every subdirectly irreducible factor of `A` for an embedding into
/// one of `sis`.
pub fn decompose_and_check(a: &FiniteAlgebra, sis: &[FiniteAlgebra]) -> Result<MembershipVerdict> {
    check_signatures(a, sis)?;
    let factors = subdirect_decomposition(a)?;
    let mut out = Vec::with_capacity(factors.len());
    for f in &factors {
        let found = sis
            .iter()
            .enumerate()
            .find_map(|(index, s)| find_homomorphism(&f.quotient, s, HomMode::Injective, &[]).map(|hom| IndexedHom { index, hom }));
        match found {
            Some(embedding) => out.push(FactorEmbedding { pair: f.pair, embedding }),
            None => {
                return Ok(MembershipVerdict::no(
                    Witness::UnembeddableFactor { pair: f.pair },
                    format!("factor separating {:?} embeds nowhere", f.pair),
                ))
            }
        }
    }
    let report = format!("{} subdirectly irreducible factors", out.len());
    Ok(MembershipVerdict::yes(Witness::Factors(out), report))
}

/// Result of [`idempotent_trivial_subgroups`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCheck {
    pub holds: bool,
    /// The subsemigroup generated by the idempotents, ascending.
    pub generated: Vec<usize>,
    /// An element `a` with `a³ = a ≠ a²`, written as a product of idempotents.
    pub offender: Option<(usize, Vec<usize>)>,
}

/// Whether the subsemigroup generated by the idempotents of the first binary
/// operation has only trivial subgroups.
pub fn idempotent_trivial_subgroups(a: &FiniteAlgebra) -> Result<SubgroupCheck> {
    let op = (0..a.signature().len())
        .find(|&f| a.signature().arity(f) == 2)
        .ok_or_else(|| Error::Precondition("no binary operation".into()))?;
    if !a.is_associative(op) {
        return Err(Error::Precondition(format!(
            "`{}` is not associative",
            a.signature().symbol(op).name
        )));
    }
    let mul = |x, y| a.apply2(op, x, y);
    let mut word: Vec<Option<Vec<usize>>> = vec![None; a.size()];
    let mut members = Vec::new();
    for e in (0..a.size()).filter(|&e| mul(e, e) == e) {
        word[e] = Some(vec![e]);
        members.push(e);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        let mut j = 0;
        while j <= i {
            let y = members[j];
            for (l, r) in [(x, y), (y, x)] {
                let p = mul(l, r);
                if word[p].is_none() {
                    let mut w = word[l].clone().expect("member");
                    w.extend(word[r].as_ref().expect("member"));
                    word[p] = Some(w);
                    members.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    let mut generated = members.clone();
    generated.sort_unstable();
    let offender = generated
        .iter()
        .find(|&&x| {
            let sq = mul(x, x);
            mul(sq, x) == x && sq != x
        })
        .map(|&x| (x, word[x].clone().expect("member")));
    Ok(SubgroupCheck {
        holds: offender.is_none(),
        generated,
        offender,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::constructions::rees_over_c2;
    use crate::fixtures;
    use crate::freealg::satisfies_equation;

    fn grp() -> FiniteAlgebra {
        fixtures::rename_symbol(&fixtures::cyclic_group(2), "*", "^")
    }

    #[test]
    fn operators_on_semilattices() {
        let s = fixtures::semilattice2();
        for op in ClassOperator::ALL {
            assert!(operator_membership(&s, std::slice::from_ref(&s), op, HsCaps::default()).unwrap().holds);
        }
        let c3 = fixtures::chain_semilattice(3);
        let v = operator_membership(&c3, std::slice::from_ref(&s), ClassOperator::SP, HsCaps::default()).unwrap();
        match v.witness {
            Witness::Separating(h) => assert_eq!(h.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(!operator_membership(&c3, std::slice::from_ref(&s), ClassOperator::S, HsCaps::default()).unwrap().holds);
        assert!(!operator_membership(&s, &[grp()], ClassOperator::SP, HsCaps::default()).unwrap().holds);
        assert!(operator_membership(&s, &[c3], ClassOperator::HS, HsCaps::default()).unwrap().holds);
    }

    #[test]
    fn left_zero_not_separated_by_right_zero() {
        let lz = fixtures::left_zero(2);
        let rz = fixtures::right_zero(2);
        let v = operator_membership(&lz, &[rz], ClassOperator::SP, HsCaps::default()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Witness::Inseparable(0, 1));
    }

    #[test]
    fn sp_plus_needs_a_homomorphism() {
        let one = fixtures::trivial(fixtures::left_zero(2).signature());
        let g = fixtures::cyclic_group(3);
        assert!(operator_membership(&one, std::slice::from_ref(&g), ClassOperator::SP, HsCaps::default()).unwrap().holds);
        assert!(operator_membership(&one, &[g], ClassOperator::SPPlus, HsCaps::default()).unwrap().holds);
        let cyc = fixtures::unar_cycle(2);
        let point = fixtures::trivial(cyc.signature());
        assert!(operator_membership(&point, std::slice::from_ref(&cyc), ClassOperator::SP, HsCaps::default()).unwrap().holds);
        assert!(!operator_membership(&point, &[cyc], ClassOperator::SPPlus, HsCaps::default()).unwrap().holds);
    }

    #[test]
    fn hsp_examples() {
        let s = fixtures::semilattice2();
        let sq = direct_product(&[s.clone(), s.clone()]).unwrap();
        assert!(in_hsp(&sq, &s, FreeCaps::default()).unwrap().holds);
        assert!(in_hsp(&s, &s, FreeCaps::default()).unwrap().holds);
        let lz = fixtures::left_zero(2);
        let rz = fixtures::right_zero(2);
        let v = in_hsp(&lz, &rz, FreeCaps::default()).unwrap();
        assert!(!v.holds);
        match v.witness {
            Witness::FailingEquation { lhs, rhs, assignment } => {
                assert!(satisfies_equation(std::slice::from_ref(&rz), &lhs, &rhs).unwrap().is_none());
                assert_ne!(lhs.eval(&lz, &assignment), rhs.eval(&lz, &assignment));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decomposition_checks() {
        let s = fixtures::semilattice2();
        let sq = direct_product(&[s.clone(), s.clone()]).unwrap();
        assert!(decompose_and_check(&sq, std::slice::from_ref(&s)).unwrap().holds);
        assert!(!decompose_and_check(&grp(), std::slice::from_ref(&s)).unwrap().holds);
        let one = fixtures::trivial(s.signature());
        assert!(decompose_and_check(&one, &[]).unwrap().holds);
    }

    #[test]
    fn rees_subgroups() {
        for n in 3..=4 {
            let a = rees_over_c2(n, true).unwrap();
            let b = rees_over_c2(n, false).unwrap();
            let ca = idempotent_trivial_subgroups(&a).unwrap();
            assert!(!ca.holds);
            let (x, w) = ca.offender.clone().unwrap();
            let prod = w[1..].iter().fold(w[0], |acc, &e| a.apply2(0, acc, e));
            assert_eq!(prod, x);
            assert!(idempotent_trivial_subgroups(&b).unwrap().holds);
        }
        assert!(idempotent_trivial_subgroups(&fixtures::semilattice2()).unwrap().holds);
        // the idempotent quasigroup x*y = 2x+2y mod 3 is not associative
        let sig = fixtures::left_zero(3).signature().clone();
        let q = FiniteAlgebra::from_fn("Q", sig, 3, |_, a| (2 * a[0] + 2 * a[1]) % 3).unwrap();
        assert!(idempotent_trivial_subgroups(&q).is_err());
    }
}
