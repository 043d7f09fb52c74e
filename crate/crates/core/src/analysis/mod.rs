//! Pfaff-system analysis of k-forms: singular locus, regularity, Plücker
//! decomposability, Frobenius integrability, torus weights, involutivity,
//! and the enumeration of regular systems on no-resonance manifolds.

mod frobenius;
mod regular;
mod singular;

pub use frobenius::{
    check_equivariance, distribution_involutive, is_decomposable, is_integrable, recover_character,
    term_weights, torus_invariant, Integrability,
};
pub use regular::{enumerate_regular_systems, RegularEnumeration, RegularSystem};
pub use singular::{
    is_regular, monomial_strata_brute_force, singular_locus, CoordinateStratum, ProbabilisticVerdict,
    SampledStratum, SingularLocus, SAMPLES_PER_STRATUM,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exterior::KForm;
use crate::spectrum::{classify, compute_relation_lattice, Character, Spectrum};

/// Codimension of the singular set, `"empty"` when regular.
mod sing_codim_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(c) => c.serialize(s),
            None => s.serialize_str("empty"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(c) => Ok(Some(c)),
            Raw::Text(t) if t == "empty" => Ok(None),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad sing_codim `{t}`"))),
        }
    }
}

/// The leaf `{z_I = 0} ∖ {0}` modulo the contraction: itself a Hopf
/// manifold of dimension `n − k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactLeaf {
    /// 1-based.
    pub zero_set: Vec<usize>,
    pub description: String,
}

impl CompactLeaf {
    pub fn for_tuple(idx: &[usize]) -> Self {
        let zero_set: Vec<usize> = idx.iter().map(|i| i + 1).collect();
        let eqs: Vec<String> = zero_set.iter().map(|i| format!("z{i}")).collect();
        CompactLeaf {
            description: format!("{{{} = 0}} minus origin, modulo <f>", eqs.join(" = ")),
            zero_set,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffReport {
    pub n: usize,
    pub k: usize,
    /// Character exponents (given or recovered by weight bookkeeping).
    pub character: Option<Vec<i64>>,
    /// Resonance class of the spectrum, when one was supplied.
    pub case: Option<String>,
    #[serde(rename = "singular_strata")]
    pub singular_locus: SingularLocus,
    #[serde(with = "sing_codim_serde")]
    pub sing_codim: Option<usize>,
    pub is_regular: bool,
    pub is_decomposable: bool,
    pub is_integrable: Integrability,
    pub torus_invariant: bool,
    /// `f*ω = b·ω`, when both spectrum and character are known.
    pub equivariant: Option<bool>,
    pub compact_leaf: Option<CompactLeaf>,
    pub notes: Vec<String>,
}

/// Full report for one form. `spectrum`/`character` are optional context.
pub fn analyze(spectrum: Option<&Spectrum>, character: Option<&Character>, w: &KForm) -> Result<PfaffReport> {
    let locus = singular_locus(w)?;
    let sing_codim = locus.codim();
    let is_regular = sing_codim.is_none();
    let is_decomposable = is_decomposable(w);
    let is_integrable = is_integrable(w);
    let torus = torus_invariant(w)?;
    let mut notes = Vec::new();

    let mut case = None;
    let mut equivariant = None;
    let mut recovered = character.map(|c| c.exponents().to_vec());
    if let Some(s) = spectrum {
        let l = compute_relation_lattice(s);
        case = Some(classify(s, &l).to_string());
        match character {
            Some(b) => equivariant = Some(check_equivariance(s, &l, b, w)?),
            None => {
                recovered = recover_character(&l, w)?;
                if recovered.is_none() {
                    notes.push("terms carry different characters: not a twisted section".to_string());
                }
            }
        }
    }
    if !locus.is_exact() {
        notes.push(format!(
            "singular locus partly estimated from {SAMPLES_PER_STRATUM} random points per orbit"
        ));
    }
    if sing_codim == Some(1) {
        notes.push("singular set has a codimension-one component".to_string());
    }
    assert!(
        !is_integrable.is_integrable() || is_decomposable,
        "integrability is only tested on decomposable forms"
    );
    let compact_leaf = (is_regular && singular::is_constant_single_term(w))
        .then(|| CompactLeaf::for_tuple(w.terms().next().expect("nonzero").0));

    Ok(PfaffReport {
        n: w.n(),
        k: w.degree(),
        character: recovered,
        case,
        singular_locus: locus,
        sing_codim,
        is_regular,
        is_decomposable,
        is_integrable,
        torus_invariant: torus,
        equivariant,
        compact_leaf,
        notes,
    })
}
