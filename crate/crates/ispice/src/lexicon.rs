//! Closed-class and open-class word lists driving the tagger and extractor.
//!
//! The lexicon ships as a versioned data file bundled into the binary; its
//! SHA-256 is embedded in every report so extraction goldens stay pinned to
//! the exact word lists that produced them.

use std::collections::HashSet;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../data/lexicon.txt");

#[derive(Debug, Clone)]
pub struct Lexicon {
    determiners: HashSet<String>,
    prepositions: HashSet<String>,
    pronouns: HashSet<String>,
    auxiliaries: HashSet<String>,
    conjunctions: HashSet<String>,
    verbs: HashSet<String>,
    adjectives: HashSet<String>,
    hash: String,
}

impl Lexicon {
    /// Parses the sectioned plain-text format: one word per line under
    /// headers `[determiners]`, `[prepositions]`, `[pronouns]`,
    /// `[auxiliaries]`, `[conjunctions]`, `[verbs]`, `[adjectives]`.
    /// The seven sets must be pairwise disjoint.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lex = Self {
            determiners: HashSet::new(),
            prepositions: HashSet::new(),
            pronouns: HashSet::new(),
            auxiliaries: HashSet::new(),
            conjunctions: HashSet::new(),
            verbs: HashSet::new(),
            adjectives: HashSet::new(),
            hash: sha256_hex(text),
        };
        let mut section: Option<&str> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = Some(match header {
                    "determiners" => "determiners",
                    "prepositions" => "prepositions",
                    "pronouns" => "pronouns",
                    "auxiliaries" => "auxiliaries",
                    "conjunctions" => "conjunctions",
                    "verbs" => "verbs",
                    "adjectives" => "adjectives",
                    other => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            reason: format!("unknown lexicon section [{other}]"),
                        })
                    }
                });
                continue;
            }
            let word = line.to_lowercase();
            let target = match section {
                Some("determiners") => &mut lex.determiners,
                Some("prepositions") => &mut lex.prepositions,
                Some("pronouns") => &mut lex.pronouns,
                Some("auxiliaries") => &mut lex.auxiliaries,
                Some("conjunctions") => &mut lex.conjunctions,
                Some("verbs") => &mut lex.verbs,
                Some("adjectives") => &mut lex.adjectives,
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        reason: "word before any section header".to_string(),
                    })
                }
            };
            target.insert(word);
        }
        lex.check_disjoint()?;
        Ok(lex)
    }

    fn check_disjoint(&self) -> Result<()> {
        let sets: [(&str, &HashSet<String>); 7] = [
            ("determiners", &self.determiners),
            ("prepositions", &self.prepositions),
            ("pronouns", &self.pronouns),
            ("auxiliaries", &self.auxiliaries),
            ("conjunctions", &self.conjunctions),
            ("verbs", &self.verbs),
            ("adjectives", &self.adjectives),
        ];
        for (i, (name_a, a)) in sets.iter().enumerate() {
            for (name_b, b) in sets.iter().skip(i + 1) {
                if let Some(word) = a.intersection(b).next() {
                    return Err(Error::Parse {
                        line: 0,
                        reason: format!(
                            "lexicon sections [{name_a}] and [{name_b}] both contain {word:?}"
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The lexicon bundled with the toolkit.
    pub fn bundled() -> &'static Lexicon {
        static LEXICON: OnceLock<Lexicon> = OnceLock::new();
        LEXICON.get_or_init(|| Lexicon::parse(BUNDLED).expect("bundled lexicon is valid"))
    }

    /// SHA-256 of the source text, hex-encoded.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// True for any closed-class (function) word.
    pub fn is_function(&self, word: &str) -> bool {
        self.determiners.contains(word)
            || self.prepositions.contains(word)
            || self.pronouns.contains(word)
            || self.auxiliaries.contains(word)
            || self.conjunctions.contains(word)
    }

    pub fn is_determiner(&self, word: &str) -> bool {
        self.determiners.contains(word)
    }

    pub fn is_preposition(&self, word: &str) -> bool {
        self.prepositions.contains(word)
    }

    pub fn is_conjunction(&self, word: &str) -> bool {
        self.conjunctions.contains(word)
    }

    pub fn is_verb(&self, word: &str) -> bool {
        self.verbs.contains(word)
    }

    pub fn is_adjective(&self, word: &str) -> bool {
        self.adjectives.contains(word)
    }

    pub fn verbs(&self) -> &HashSet<String> {
        &self.verbs
    }
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}
