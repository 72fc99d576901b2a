//! JSON documents for graphs, automata and compiled instances.
//!
//! Every document has a fixed key order and integer-only numbers, so loading and
//! re-serializing a pretty-printed document reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use artinkit::automata::Nfa;
use artinkit::classifier::{Status, Verdict};
use artinkit::raag::{LabeledGraph, Raag};
use artinkit::reduction::{Ambient, BaseGroup, InstanceKind, ReductionInstance};
use artinkit::words::{Alphabet, Letter, Word};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u32)>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<LabeledGraph, CliError> {
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str, u32)> = self
            .edges
            .iter()
            .map(|(u, v, l)| (u.as_str(), v.as_str(), *l))
            .collect();
        Ok(LabeledGraph::from_names(&vertices, &edges)?)
    }

    pub fn from_graph(graph: &LabeledGraph) -> Self {
        let name = |v: usize| graph.vertices().name(v).unwrap_or_default().to_string();
        GraphDoc {
            vertices: graph.vertices().symbols().to_vec(),
            edges: graph
                .edges()
                .map(|(u, v, l)| (name(u), name(v), l))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfaDoc {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub finals: Vec<String>,
    /// `[from, label, to]` with label `a`, `a^-1` or `eps`.
    pub transitions: Vec<(String, String, String)>,
}

impl NfaDoc {
    pub fn to_nfa(&self) -> Result<Nfa, CliError> {
        fn strs(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        let transitions: Vec<(&str, &str, &str)> = self
            .transitions
            .iter()
            .map(|(p, l, q)| (p.as_str(), l.as_str(), q.as_str()))
            .collect();
        Ok(Nfa::from_names(
            &strs(&self.states),
            &strs(&self.alphabet),
            &transitions,
            &self.initial,
            &strs(&self.finals),
        )?)
    }

    pub fn from_nfa(nfa: &Nfa) -> Self {
        let state = |s: usize| nfa.states()[s].clone();
        NfaDoc {
            alphabet: nfa.alphabet().symbols().to_vec(),
            states: nfa.states().to_vec(),
            initial: state(nfa.initial()),
            finals: nfa.finals().iter().map(|&f| state(f)).collect(),
            transitions: nfa
                .transitions()
                .iter()
                .map(|t| {
                    let label = t
                        .label
                        .map_or_else(|| "eps".to_string(), |l| letter_token(nfa.alphabet(), l));
                    (state(t.from), label, state(t.to))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    /// `trivial`, `free` or `p4`.
    pub kind: String,
    pub alphabet: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case", deny_unknown_fields)]
pub enum AmbientDoc {
    FreeProduct { base: BaseDoc },
    P4,
    B4,
}

/// Generator names for `G * F3` and `A(P4)`, signed integers for `B4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordDoc {
    Letters(Vec<String>),
    Braid(Vec<i32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub ambient: AmbientDoc,
    /// `fixed_target_submonoid` or `semigroup_intersection`.
    pub kind: String,
    pub generators: Vec<WordDoc>,
    pub target: WordDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

fn kind_name(kind: InstanceKind) -> &'static str {
    match kind {
        InstanceKind::FixedTargetSubmonoid => "fixed_target_submonoid",
        InstanceKind::SemigroupIntersection => "semigroup_intersection",
    }
}

impl InstanceDoc {
    pub fn from_instance(inst: &ReductionInstance) -> Self {
        let ambient = match inst.ambient() {
            Ambient::FreeProduct(base) => AmbientDoc::FreeProduct {
                base: BaseDoc {
                    kind: base_kind_name(base).into(),
                    alphabet: base.alphabet().symbols().to_vec(),
                },
            },
            Ambient::P4 => AmbientDoc::P4,
            Ambient::B4 => AmbientDoc::B4,
        };
        let alphabet = inst.ambient().alphabet();
        let encode = |w: &Word| match inst.ambient() {
            Ambient::B4 => WordDoc::Braid(w.to_signed()),
            _ => WordDoc::Letters(
                w.letters()
                    .iter()
                    .map(|&l| letter_token(&alphabet, l))
                    .collect(),
            ),
        };
        InstanceDoc {
            ambient,
            kind: kind_name(inst.kind()).into(),
            generators: inst.generators().iter().map(encode).collect(),
            target: encode(inst.target()),
            witness: inst.witness().map(<[usize]>::to_vec),
        }
    }

    /// Builds the instance, re-verifying any witness with the ambient word-problem kernel.
    pub fn to_instance(&self) -> Result<ReductionInstance, CliError> {
        let ambient = match &self.ambient {
            AmbientDoc::FreeProduct { base } => {
                let alphabet = Alphabet::new(base.alphabet.iter().cloned())?;
                let group = match base.kind.as_str() {
                    "trivial" => BaseGroup::Trivial(alphabet),
                    "free" => BaseGroup::Free(alphabet),
                    "p4" => {
                        let p4 = Raag::p4();
                        if &alphabet != p4.graph().vertices() {
                            return Err(CliError::Input(
                                "a p4 base must have alphabet [a, b, c, d]".into(),
                            ));
                        }
                        BaseGroup::P4(p4)
                    }
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown base group kind `{other}`"
                        )))
                    }
                };
                Ambient::FreeProduct(group)
            }
            AmbientDoc::P4 => Ambient::P4,
            AmbientDoc::B4 => Ambient::B4,
        };
        let kind = match self.kind.as_str() {
            "fixed_target_submonoid" => InstanceKind::FixedTargetSubmonoid,
            "semigroup_intersection" => InstanceKind::SemigroupIntersection,
            other => return Err(CliError::Input(format!("unknown instance kind `{other}`"))),
        };
        let alphabet = ambient.alphabet();
        let decode = |w: &WordDoc| -> Result<Word, CliError> {
            match (w, &ambient) {
                (WordDoc::Braid(signed), Ambient::B4) => Ok(Word::from_signed(signed)?),
                (WordDoc::Letters(tokens), Ambient::B4) if tokens.is_empty() => {
                    Ok(Word::identity())
                }
                (WordDoc::Letters(_), Ambient::B4) => {
                    Err(CliError::Input("b4 words are integer arrays".into()))
                }
                (WordDoc::Letters(tokens), _) => Ok(tokens
                    .iter()
                    .map(|t| alphabet.parse_letter(t))
                    .collect::<Result<Word, _>>()?),
                (WordDoc::Braid(_), _) => {
                    Err(CliError::Input("integer words are only used in b4".into()))
                }
            }
        };
        let generators = self
            .generators
            .iter()
            .map(decode)
            .collect::<Result<Vec<_>, _>>()?;
        let target = decode(&self.target)?;
        Ok(ReductionInstance::new(
            ambient,
            generators,
            target,
            kind,
            self.witness.clone(),
        )?)
    }
}

fn base_kind_name(base: &BaseGroup) -> &'static str {
    match base {
        BaseGroup::Trivial(_) => "trivial",
        BaseGroup::Free(_) => "free",
        BaseGroup::P4(_) => "p4",
    }
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Decidable => "decidable",
        Status::Undecidable => "undecidable",
        Status::Open => "open",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub pattern: String,
    pub vertices: Vec<String>,
    pub labels: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatusDoc {
    pub problem: String,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictDoc {
    pub statuses: Vec<StatusDoc>,
    pub witness: Option<WitnessDoc>,
    pub witnesses: Vec<WitnessDoc>,
    pub justifications: Vec<String>,
    pub notes: Vec<String>,
}

impl VerdictDoc {
    pub fn new(graph: &LabeledGraph, verdict: &Verdict) -> Self {
        let witness = |w: &artinkit::classifier::ForbiddenWitness| WitnessDoc {
            pattern: w.pattern.name().into(),
            vertices: w
                .vertices
                .iter()
                .map(|&v| graph.vertices().name(v).unwrap_or_default().to_string())
                .collect(),
            labels: w.labels.clone(),
        };
        VerdictDoc {
            statuses: verdict
                .statuses()
                .iter()
                .map(|&(p, s)| StatusDoc {
                    problem: p.short_name().into(),
                    status: status_name(s).into(),
                })
                .collect(),
            witness: verdict.witness().map(witness),
            witnesses: verdict.witnesses().iter().map(witness).collect(),
            justifications: verdict.justifications().to_vec(),
            notes: verdict.notes().to_vec(),
        }
    }
}

pub fn letter_token(alphabet: &Alphabet, l: Letter) -> String {
    let name = alphabet.name(l.generator).unwrap_or("?");
    if l.inverse {
        format!("{name}^-1")
    } else {
        name.to_string()
    }
}

/// Parses a whitespace-separated word such as `a b^-1 c`; `""`, `1` and `eps` are the identity.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, CliError> {
    let text = text.trim();
    if text.is_empty() || text == "1" || text == "eps" {
        return Ok(Word::identity());
    }
    Ok(text
        .split_whitespace()
        .map(|t| alphabet.parse_letter(t))
        .collect::<Result<Word, _>>()?)
}

/// Parses a braid word written as a JSON array of signed generator indices.
pub fn parse_braid(text: &str) -> Result<Vec<i32>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("braid word: {e}")))
}

pub fn load<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}
