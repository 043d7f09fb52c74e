//! External JSON formats. Every index is 1-based on the wire; every
//! rational is an explicit `{"num", "den"}` pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Monomial, Poly};
use crate::rational::{GaussRat, JsonRational};
use crate::sections::{MonomialSolution, ParametricForm, ParametricTerm, SectionBasis, SectionNote};
use crate::spectrum::{character_from_value, Character, Eigenvalues, HopfClass, Spectrum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Exact,
    Symbolic,
}

/// `{"n":5,"mode":"exact","mu":[{"num":1,"den":2},…]}` or
/// `{"n":5,"mode":"symbolic","classes":[1,1,1,2,3]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumJson {
    pub n: usize,
    pub mode: SpectrumMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<JsonRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<u32>>,
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        match s.eigenvalues() {
            Eigenvalues::Exact(mu) => SpectrumJson {
                n: s.n(),
                mode: SpectrumMode::Exact,
                mu: Some(mu.iter().map(JsonRational::from).collect()),
                classes: None,
            },
            Eigenvalues::Symbolic(c) => SpectrumJson {
                n: s.n(),
                mode: SpectrumMode::Symbolic,
                mu: None,
                classes: Some(c.clone()),
            },
        }
    }
}

impl SpectrumJson {
    pub fn to_spectrum(&self) -> Result<Spectrum> {
        let check_len = |field: &str, len: usize| {
            if len == self.n {
                Ok(())
            } else {
                Err(Error::input(field, format!("has {len} entries but n = {}", self.n)))
            }
        };
        let s = match self.mode {
            SpectrumMode::Exact => {
                if self.classes.is_some() {
                    return Err(Error::input("manifold.classes", "not allowed in exact mode"));
                }
                let mu = self
                    .mu
                    .as_ref()
                    .ok_or_else(|| Error::input("manifold.mu", "required in exact mode"))?;
                check_len("manifold.mu", mu.len())?;
                let values = mu
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.to_rational(&format!("manifold.mu[{}]", i + 1)))
                    .collect::<Result<Vec<_>>>()?;
                Spectrum::exact(values)
            }
            SpectrumMode::Symbolic => {
                if self.mu.is_some() {
                    return Err(Error::input("manifold.mu", "not allowed in symbolic mode"));
                }
                let classes = self
                    .classes
                    .as_ref()
                    .ok_or_else(|| Error::input("manifold.classes", "required in symbolic mode"))?;
                check_len("manifold.classes", classes.len())?;
                Spectrum::symbolic(classes.clone())
            }
        };
        s.map_err(|e| match e {
            Error::InvalidSpectrum(m) => Error::input("manifold", m),
            other => other,
        })
    }
}

/// `{"exponents":[1,1,1,0,0]}` or `{"value":{"num":1,"den":6}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<JsonRational>,
}

impl From<&Character> for CharacterJson {
    fn from(c: &Character) -> Self {
        CharacterJson {
            exponents: Some(c.exponents().to_vec()),
            value: None,
        }
    }
}

impl CharacterJson {
    pub fn to_character(&self, s: &Spectrum) -> Result<Character> {
        match (&self.exponents, &self.value) {
            (Some(e), None) => {
                if e.len() != s.n() {
                    return Err(Error::input(
                        "character.exponents",
                        format!("has {} entries but n = {}", e.len(), s.n()),
                    ));
                }
                Character::from_exponents(s, e.clone())
            }
            (None, Some(v)) => {
                let value = v.to_rational("character.value")?;
                if !s.is_exact() {
                    return Err(Error::input(
                        "character.value",
                        "a numeric value needs an exact spectrum; give exponents instead",
                    ));
                }
                character_from_value(s, &value).map_err(|e| match e {
                    Error::NotMonomialCharacter => Error::input("character.value", e.to_string()),
                    other => other,
                })
            }
            _ => Err(Error::input("character", "give exactly one of `exponents` or `value`")),
        }
    }
}

/// One coefficient term `c · z^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermJson {
    pub alpha: Vec<u32>,
    pub re: JsonRational,
    pub im: JsonRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermJson {
    pub idx: Vec<usize>,
    pub poly: Vec<PolyTermJson>,
}

/// `{"n":6,"k":2,"terms":[{"idx":[1,4],"poly":[{"alpha":[…],"re":…,"im":…}]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KFormJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<FormTermJson>,
}

impl From<&KForm> for KFormJson {
    fn from(w: &KForm) -> Self {
        let terms = w
            .terms()
            .map(|(idx, g)| FormTermJson {
                idx: idx.iter().map(|i| i + 1).collect(),
                poly: g
                    .terms()
                    .map(|(m, c)| PolyTermJson {
                        alpha: m.0.clone(),
                        re: (&c.re).into(),
                        im: (&c.im).into(),
                    })
                    .collect(),
            })
            .collect();
        KFormJson {
            n: w.n(),
            k: w.degree(),
            terms,
        }
    }
}

impl KFormJson {
    pub fn to_kform(&self) -> Result<KForm> {
        let (n, k) = (self.n, self.k);
        if n == 0 || n > 63 {
            return Err(Error::input("form.n", format!("n = {n} is outside 1..=63")));
        }
        if k > n {
            return Err(Error::input("form.k", format!("k = {k} exceeds n = {n}")));
        }
        let mut out = KForm::zero(n, k);
        for (t, term) in self.terms.iter().enumerate() {
            let field = format!("form.terms[{}]", t + 1);
            if term.idx.len() != k {
                return Err(Error::input(
                    format!("{field}.idx"),
                    format!("has {} indices but k = {k}", term.idx.len()),
                ));
            }
            if let Some(bad) = term.idx.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::input(format!("{field}.idx"), format!("index {bad} is outside 1..={n}")));
            }
            let mut g = Poly::zero(n);
            for (j, pt) in term.poly.iter().enumerate() {
                let pfield = format!("{field}.poly[{}]", j + 1);
                if pt.alpha.len() != n {
                    return Err(Error::input(
                        format!("{pfield}.alpha"),
                        format!("has {} entries but n = {n}", pt.alpha.len()),
                    ));
                }
                let c = GaussRat::new(
                    pt.re.to_rational(&format!("{pfield}.re"))?,
                    pt.im.to_rational(&format!("{pfield}.im"))?,
                );
                g.add_term(Monomial(pt.alpha.clone()), &c);
            }
            let idx: Vec<usize> = term.idx.iter().map(|i| i - 1).collect();
            let piece = KForm::term(n, &idx, g).map_err(|e| Error::input(format!("{field}.idx"), e.to_string()))?;
            out = out.add(&piece)?;
        }
        Ok(out)
    }
}

/// `z^α dz_I` with a 1-based tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionJson {
    pub idx: Vec<usize>,
    pub alpha: Vec<u32>,
}

impl From<&MonomialSolution> for SolutionJson {
    fn from(s: &MonomialSolution) -> Self {
        SolutionJson {
            idx: s.idx.iter().map(|i| i + 1).collect(),
            alpha: s.alpha.0.clone(),
        }
    }
}

impl SolutionJson {
    pub fn to_solution(&self) -> Result<MonomialSolution> {
        if self.idx.iter().any(|&i| i == 0 || i > self.alpha.len()) {
            return Err(Error::input("solutions.idx", "index outside 1..=n"));
        }
        Ok(MonomialSolution {
            idx: self.idx.iter().map(|i| i - 1).collect(),
            alpha: Monomial(self.alpha.clone()),
        })
    }
}

/// `{"class":"WeakNoResonance","r":3,"perm":[1,2,3,4,5,6]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

impl From<&HopfClass> for ClassJson {
    fn from(c: &HopfClass) -> Self {
        match c {
            HopfClass::WeakNoResonance { r, perm } => ClassJson {
                class: c.name().to_string(),
                r: Some(*r),
                perm: Some(perm.iter().map(|i| i + 1).collect()),
            },
            _ => ClassJson {
                class: c.name().to_string(),
                r: None,
                perm: None,
            },
        }
    }
}

impl ClassJson {
    pub fn to_class(&self) -> Result<HopfClass> {
        match (self.class.as_str(), self.r, &self.perm) {
            ("Classical", None, None) => Ok(HopfClass::Classical),
            ("NoResonance", None, None) => Ok(HopfClass::NoResonance),
            ("GeneralResonant", None, None) => Ok(HopfClass::GeneralResonant),
            ("WeakNoResonance", Some(r), Some(perm)) => {
                if perm.contains(&0) || r > perm.len() {
                    return Err(Error::input("perm", "must be a 1-based permutation"));
                }
                Ok(HopfClass::WeakNoResonance {
                    r,
                    perm: perm.iter().map(|i| i - 1).collect(),
                })
            }
            (other, _, _) => Err(Error::input("class", format!("unknown or incomplete class `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub symbol: usize,
    pub alpha: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametricTermJson {
    pub idx: Vec<usize>,
    pub factor: Vec<u32>,
    pub block_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub symbols: Vec<SymbolJson>,
}

/// The general section with free coefficients `c0, c1, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralJson {
    pub n: usize,
    pub k: usize,
    pub case: ClassJson,
    pub num_symbols: usize,
    pub display: String,
    pub terms: Vec<ParametricTermJson>,
}

impl From<&ParametricForm> for GeneralJson {
    fn from(p: &ParametricForm) -> Self {
        GeneralJson {
            n: p.n,
            k: p.k,
            case: (&p.case).into(),
            num_symbols: p.num_symbols(),
            display: p.to_string(),
            terms: p
                .terms
                .iter()
                .map(|t| ParametricTermJson {
                    idx: t.idx.iter().map(|i| i + 1).collect(),
                    factor: t.factor.0.clone(),
                    block_degree: t.block_degree,
                    s: t.s,
                    symbols: t
                        .symbols
                        .iter()
                        .map(|(sym, m)| SymbolJson {
                            symbol: *sym,
                            alpha: m.0.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl GeneralJson {
    pub fn to_parametric(&self) -> Result<ParametricForm> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.idx.iter().any(|&i| i == 0 || i > self.n) {
                    return Err(Error::input("terms.idx", "index outside 1..=n"));
                }
                Ok(ParametricTerm {
                    idx: t.idx.iter().map(|i| i - 1).collect(),
                    factor: Monomial(t.factor.clone()),
                    block_degree: t.block_degree,
                    s: t.s,
                    symbols: t
                        .symbols
                        .iter()
                        .map(|s| (s.symbol, Monomial(s.alpha.clone())))
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParametricForm {
            n: self.n,
            k: self.k,
            case: self.case.to_class()?,
            terms,
        })
    }
}

/// `{"dim":50,"solutions":[{"idx":[1,2],"alpha":[1,0,0,0,0]},…]}` plus
/// optional explicit forms and general section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionsJson {
    pub dim: usize,
    pub solutions: Vec<SolutionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<SectionNote>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<KFormJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general: Option<GeneralJson>,
}

impl SectionsJson {
    pub fn new(b: &SectionBasis) -> Self {
        SectionsJson {
            dim: b.dim(),
            solutions: b.solutions.iter().map(SolutionJson::from).collect(),
            notes: b.notes.clone(),
            basis: None,
            general: None,
        }
    }

    pub fn to_basis(&self) -> Result<SectionBasis> {
        let solutions = self
            .solutions
            .iter()
            .map(SolutionJson::to_solution)
            .collect::<Result<Vec<_>>>()?;
        if solutions.len() != self.dim {
            return Err(Error::input("dim", "does not match the number of solutions"));
        }
        Ok(SectionBasis {
            solutions,
            notes: self.notes.clone(),
        })
    }
}
