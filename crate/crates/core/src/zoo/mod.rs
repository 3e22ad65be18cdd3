//! Builtin automata and grammars with the properties the test suite
//! certifies for them.

use crate::error::{Error, Result};
use crate::grammar::{parse_grammar, Grammar};
use crate::model::{parse_automaton, Automaton};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooKind {
    Automaton,
    Grammar,
}

#[derive(Debug, Clone, Copy)]
pub struct ZooEntry {
    pub name: &'static str,
    pub kind: ZooKind,
    pub source: &'static str,
    /// Whether the entry runs without `choose` (for grammars: after compilation).
    pub deterministic: bool,
    /// Sample inputs, one token per character, with the expected acceptance.
    pub samples: &'static [(&'static str, bool)],
    pub tags: &'static [&'static str],
}

impl ZooEntry {
    pub fn automaton(&self) -> Result<Automaton> {
        match self.kind {
            ZooKind::Automaton => parse_automaton(self.source),
            ZooKind::Grammar => Err(Error::UnknownZoo(format!("{} is a grammar", self.name))),
        }
    }

    pub fn grammar(&self) -> Result<Grammar> {
        match self.kind {
            ZooKind::Grammar => parse_grammar(self.source),
            ZooKind::Automaton => Err(Error::UnknownZoo(format!("{} is an automaton", self.name))),
        }
    }

    /// File name used by `zoo export`.
    pub fn file_name(&self) -> String {
        let ext = match self.kind {
            ZooKind::Automaton => "pda",
            ZooKind::Grammar => "cfg",
        };
        format!("{}.{ext}", self.name)
    }
}

const ZOO: &[ZooEntry] = &[
    ZooEntry {
        name: "accept-empty",
        kind: ZooKind::Automaton,
        source: include_str!("accept-empty.pda"),
        deterministic: true,
        samples: &[("", true), ("a", false), ("aa", false)],
        tags: &["2dpda", "constant"],
    },
    ZooEntry {
        name: "anbncn",
        kind: ZooKind::Automaton,
        source: include_str!("anbncn.pda"),
        deterministic: true,
        samples: &[
            ("abc", true),
            ("aabbcc", true),
            ("aaabbbccc", true),
            ("", false),
            ("aabbc", false),
            ("aabbccc", false),
            ("abcabc", false),
            ("acb", false),
        ],
        tags: &["2dpda", "two-way", "non-context-free", "linear"],
    },
    ZooEntry {
        name: "expo-counter",
        kind: ZooKind::Automaton,
        source: include_str!("expo-counter.pda"),
        deterministic: true,
        samples: &[("", true), ("1", true), ("1111", true)],
        tags: &["2dpda", "native-exponential", "linear-configurations"],
    },
    ZooEntry {
        name: "self-loop",
        kind: ZooKind::Automaton,
        source: include_str!("self-loop.pda"),
        deterministic: true,
        samples: &[],
        tags: &["2dpda", "nonterminating"],
    },
    ZooEntry {
        name: "dyck",
        kind: ZooKind::Grammar,
        source: include_str!("dyck.cfg"),
        deterministic: false,
        samples: &[("", true), ("()", true), ("(()())", true), (")(", false), ("(()", false)],
        tags: &["cfg", "bounded-nondeterminism"],
    },
    ZooEntry {
        name: "ambiguous",
        kind: ZooKind::Grammar,
        source: include_str!("ambiguous.cfg"),
        deterministic: false,
        samples: &[("", true), ("ab", true), ("abba", true), ("aab", false), ("bbaa", true)],
        tags: &["cfg", "ambiguous", "cubic"],
    },
    ZooEntry {
        name: "leftrec",
        kind: ZooKind::Grammar,
        source: include_str!("leftrec.cfg"),
        deterministic: false,
        samples: &[("a", true), ("aa", true), ("aaa", true), ("", false)],
        tags: &["cfg", "left-recursive"],
    },
    ZooEntry {
        name: "palindrome",
        kind: ZooKind::Grammar,
        source: include_str!("palindrome.cfg"),
        deterministic: false,
        samples: &[("", true), ("a", true), ("abba", true), ("aba", true), ("ab", false), ("abb", false)],
        tags: &["cfg", "unbounded-nondeterminism"],
    },
];

pub fn zoo_get(name: &str) -> Result<&'static ZooEntry> {
    ZOO.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownZoo(name.to_string()))
}

pub fn zoo_list() -> Vec<&'static str> {
    ZOO.iter().map(|e| e.name).collect()
}

pub fn zoo_entries() -> &'static [ZooEntry] {
    ZOO
}
