//! Command implementations behind the `artinkit` binary.
//!
//! Each command takes file contents and arguments and returns the text to print with an
//! exit code: 0 when the answer is yes, 1 when it is no or nothing was found, 2 for
//! malformed input and 3 when a supplied witness fails verification.

pub mod format;

use artinkit::automata::benois_witness;
use artinkit::braid::{braid_is_trivial, droms_images, is_pure, BraidWord};
use artinkit::classifier::classify;
use artinkit::raag::{p4_conjugate_vertex, p4_star_embedding, LabeledGraph, Raag};
use artinkit::reduction::{self, bounded_member, BaseKind, SearchOutcome, Stage};
use thiserror::Error;

use format::{parse_braid, parse_word, to_json, GraphDoc, InstanceDoc, NfaDoc, VerdictDoc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("witness verification failed: {0}")]
    Witness(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Witness(_) => 3,
        }
    }
}

impl From<artinkit::Error> for CliError {
    fn from(e: artinkit::Error) -> Self {
        match e {
            artinkit::Error::WitnessVerification(m) => CliError::Witness(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub text: String,
}

impl Output {
    fn new(holds: bool, text: impl Into<String>) -> Self {
        Output {
            code: if holds { 0 } else { 1 },
            text: text.into(),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub fn cmd_classify(graph: &str, json: bool) -> Result<Output> {
    let graph = format::load::<GraphDoc>("graph", graph)?.to_graph()?;
    let verdict = classify(&graph);
    if json {
        return Ok(Output::new(
            true,
            to_json(&VerdictDoc::new(&graph, &verdict)),
        ));
    }
    let mut text = verdict.report();
    text.push('\n');
    for note in verdict.notes() {
        text.push_str(&format!("note: {note}\n"));
    }
    Ok(Output::new(true, text))
}

fn parse_group(group: &str) -> Result<BaseKind> {
    match group {
        "trivial" => Ok(BaseKind::Trivial),
        "p4" => Ok(BaseKind::P4),
        other => match other.strip_prefix("free:").map(str::parse::<usize>) {
            Some(Ok(k)) => Ok(BaseKind::Free(k)),
            _ => Err(CliError::Input(format!(
                "unknown group `{other}`; expected trivial, free:k or p4"
            ))),
        },
    }
}

fn parse_stage(target: &str) -> Result<Stage> {
    match target {
        "product" => Ok(Stage::Product),
        "p4" => Ok(Stage::P4),
        "b4" => Ok(Stage::B4),
        other => Err(CliError::Input(format!(
            "unknown target `{other}`; expected product, p4 or b4"
        ))),
    }
}

pub fn cmd_compile(
    nfa: &str,
    group: &str,
    target: &str,
    witness_word: Option<&str>,
) -> Result<Output> {
    let nfa = format::load::<NfaDoc>("automaton", nfa)?.to_nfa()?;
    let kind = parse_group(group)?;
    let stage = parse_stage(target)?;
    // Witness words are read over the group's generators, which for p4 are a, b, c, d.
    let witness = match witness_word {
        Some(text) => {
            let alphabet = match kind {
                BaseKind::P4 => Raag::p4().graph().vertices().clone(),
                _ => nfa.alphabet().clone(),
            };
            Some(parse_word(&alphabet, text)?)
        }
        None => None,
    };
    let inst = reduction::compile(&nfa, kind, stage, witness.as_ref())?;
    Ok(Output::new(
        true,
        to_json(&InstanceDoc::from_instance(&inst)),
    ))
}

pub fn cmd_wp_raag(graph: &str, word: &str) -> Result<Output> {
    let graph = format::load::<GraphDoc>("graph", graph)?.to_graph()?;
    let raag = Raag::new(graph)?;
    let w = parse_word(raag.graph().vertices(), word)?;
    let canonical = raag.canonical_form(&w)?;
    if canonical.is_empty() {
        Ok(Output::new(true, "trivial\n"))
    } else {
        let rendered = raag.graph().vertices().render(&canonical);
        Ok(Output::new(
            false,
            format!("nontrivial; normal form {rendered}\n"),
        ))
    }
}

pub fn cmd_wp_braid(strands: usize, word: &str) -> Result<Output> {
    let braid = BraidWord::from_signed(strands, &parse_braid(word)?)?;
    let trivial = braid_is_trivial(&braid);
    let pure = if is_pure(&braid) { "pure" } else { "not pure" };
    let verdict = if trivial { "trivial" } else { "nontrivial" };
    Ok(Output::new(trivial, format!("{verdict}; {pure}\n")))
}

pub fn cmd_benois(nfa: &str, word: &str) -> Result<Output> {
    let nfa = format::load::<NfaDoc>("automaton", nfa)?.to_nfa()?;
    let u = parse_word(nfa.alphabet(), word)?;
    match benois_witness(&nfa, &u)? {
        Some(path) => {
            let path: Vec<String> = path.iter().map(usize::to_string).collect();
            Ok(Output::new(
                true,
                format!("true\npath: [{}]\n", path.join(", ")),
            ))
        }
        None => Ok(Output::new(false, "false\n")),
    }
}

pub fn cmd_search(instance: &str, depth: usize, cap: usize) -> Result<Output> {
    let inst = format::load::<InstanceDoc>("instance", instance)?.to_instance()?;
    match bounded_member(&inst, depth, cap) {
        Ok(SearchOutcome::Found { witness, power }) => {
            let text = if power == 1 {
                format!("found: witness {witness:?}\n")
            } else {
                format!("found: witness {witness:?} equals target^{power}\n")
            };
            Ok(Output::new(true, text))
        }
        Ok(SearchOutcome::NotFoundWithin(d)) => {
            Ok(Output::new(false, format!("not found within depth {d}\n")))
        }
        Err(artinkit::Error::ResourceLimit { limit }) => Ok(Output::new(
            false,
            format!("gave up: more than {limit} distinct elements\n"),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_verify_embeddings() -> Result<Output> {
    let images = droms_images();
    let p4 = LabeledGraph::p4();
    let mut matches = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            let (u, v) = (&images[i], &images[j]);
            let commutator = u.concat(v).concat(&u.inverse()).concat(&v.inverse());
            if braid_is_trivial(&commutator) == p4.has_edge(i, j) {
                matches += 1;
            }
        }
    }
    let raag = Raag::p4();
    let mut catalog_ok = true;
    for m in -4i64..=9 {
        for n in m + 1..=9 {
            catalog_ok &=
                raag.commutes(&p4_conjugate_vertex(m), &p4_conjugate_vertex(n))? == (n - m == 1);
        }
    }
    // x, y, z commute with nothing; g1..g4 commute along the path.
    let star = p4_star_embedding();
    let named = star.images();
    for (i, (a, u)) in named.iter().enumerate() {
        for (b, v) in &named[i + 1..] {
            let expected = matches!((*a, *b), ("g1", "g2") | ("g2", "g3") | ("g3", "g4"));
            catalog_ok &= raag.commutes(u, v)? == expected;
        }
    }
    let catalog = if catalog_ok {
        "catalog path checks pass"
    } else {
        "catalog path checks FAIL"
    };
    Ok(Output::new(
        matches == 6 && catalog_ok,
        format!("{matches}/6 commutator checks match P₄ adjacency; {catalog}\n"),
    ))
}
