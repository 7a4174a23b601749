//! Shared test support: a seeded synthetic captionset generator whose
//! output mimics audio-description style captions, plus serialization
//! helpers for fixture files.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ispice::Captionset;

pub const NOUNS: &[&str] = &[
    "door", "table", "window", "street", "garden", "kitchen", "box", "chair", "letter", "phone",
    "glass", "coat", "hallway", "staircase", "mirror", "candle", "umbrella", "suitcase",
    "newspaper", "bottle",
];

pub const ADJECTIVES: &[&str] = &[
    "tired", "nervous", "happy", "angry", "pale", "silent", "calm", "anxious", "young", "elderly",
    "tall", "drunk",
];

pub const TRANSITIVE: &[&str] = &[
    "carries", "holds", "watches", "follows", "chases", "hugs", "pushes", "pulls", "grabs",
];

pub const PREP_VERBS: &[(&str, &str)] = &[
    ("walks", "towards"),
    ("looks", "at"),
    ("runs", "towards"),
    ("leans", "against"),
    ("sits", "beside"),
    ("stands", "near"),
    ("waves", "at"),
    ("glances", "at"),
    ("rushes", "towards"),
    ("kneels", "beside"),
];

pub const INTRANSITIVE: &[&str] = &[
    "smiles", "laughs", "cries", "nods", "sighs", "shrugs", "yawns", "stumbles",
];

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &[&'a str]) -> &'a str {
    pool.choose(rng).expect("pool is non-empty")
}

fn pick_pair<'a>(rng: &mut ChaCha8Rng, pool: &'a [(&'a str, &'a str)]) -> (&'a str, &'a str) {
    *pool.choose(rng).expect("pool is non-empty")
}

/// Two-identity caption: transitive or preposition-mediated interaction
/// with a scenery tail.
fn pair_caption(rng: &mut ChaCha8Rng, x: u32, y: u32) -> String {
    let noun = pick(rng, NOUNS);
    let noun2 = pick(rng, NOUNS);
    let adj = pick(rng, ADJECTIVES);
    match rng.gen_range(0..3) {
        0 => {
            let verb = pick(rng, TRANSITIVE);
            format!("P{x} {verb} P{y} through the {adj} {noun} near the {noun2} .")
        }
        1 => {
            let (verb, prep) = pick_pair(rng, PREP_VERBS);
            let iverb = pick(rng, INTRANSITIVE);
            format!("P{x} {verb} {prep} P{y} and {iverb} in the {adj} {noun} .")
        }
        _ => {
            let verb = pick(rng, TRANSITIVE);
            format!("P{x} is {adj} and P{y} {verb} the {noun} near the {noun2} .")
        }
    }
}

/// Single-identity caption.
fn single_caption(rng: &mut ChaCha8Rng, x: u32) -> String {
    let noun = pick(rng, NOUNS);
    let noun2 = pick(rng, NOUNS);
    let adj = pick(rng, ADJECTIVES);
    match rng.gen_range(0..2) {
        0 => {
            let iverb = pick(rng, INTRANSITIVE);
            let iverb2 = pick(rng, INTRANSITIVE);
            format!("P{x} {iverb} and {iverb2} in the {adj} {noun} near the {noun2} .")
        }
        _ => {
            let (verb, prep) = pick_pair(rng, PREP_VERBS);
            format!("P{x} is {adj} and {verb} {prep} the {noun} in the {noun2} .")
        }
    }
}

/// Caption with no identities.
fn scene_caption(rng: &mut ChaCha8Rng) -> String {
    let noun = pick(rng, NOUNS);
    let noun2 = pick(rng, NOUNS);
    let adj = pick(rng, ADJECTIVES);
    let iverb = pick(rng, INTRANSITIVE);
    format!("the {adj} {noun} {iverb} near the {noun2} in the {adj} light .")
}

/// One synthetic captionset of five captions. Identity P1 and P2 each
/// occur at least twice (swap- and add-eligible), P3 exactly once
/// (remove-eligible).
pub fn synthetic_captionset(videoset_id: &str, seed: u64) -> Captionset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let texts = vec![
        pair_caption(&mut rng, 1, 2),
        pair_caption(&mut rng, 2, 1),
        single_caption(&mut rng, 3),
        {
            let id = if rng.gen_bool(0.5) { 1 } else { 2 };
            single_caption(&mut rng, id)
        },
        scene_caption(&mut rng),
    ];
    Captionset::from_texts(videoset_id, &texts)
        .expect("five captions")
        .normalize_identities()
}

/// A deterministic synthetic corpus. Every captionset has at least two
/// distinct identities, at least one multi-occurrence identity, and at
/// least one single-occurrence identity.
pub fn synthetic_corpus(size: usize, seed: u64) -> Vec<Captionset> {
    (0..size)
        .map(|i| {
            let id = format!("synth-{i:04}");
            synthetic_captionset(&id, seed.wrapping_add(i as u64).wrapping_mul(0x9e37_79b9))
        })
        .collect()
}

/// Canonical JSONL rendering of a corpus, matching the loader's format.
pub fn corpus_jsonl(captionsets: &[Captionset]) -> String {
    let mut out = String::new();
    for cs in captionsets {
        let record = serde_json::json!({
            "videoset_id": cs.videoset_id(),
            "captions": cs.to_texts(),
        });
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}
