//! Parser for the SentiWordNet 3.0 distribution file: tab-separated
//! `POS  ID  PosScore  NegScore  SynsetTerms  Gloss` records with
//! `#`-prefixed comment lines.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// WordNet part-of-speech tag carried by each synset line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosTag {
    Adjective,
    Noun,
    Verb,
    Adverb,
}

impl PosTag {
    pub fn code(self) -> char {
        match self {
            PosTag::Adjective => 'a',
            PosTag::Noun => 'n',
            PosTag::Verb => 'v',
            PosTag::Adverb => 'r',
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "a" => Some(PosTag::Adjective),
            "n" => Some(PosTag::Noun),
            "v" => Some(PosTag::Verb),
            "r" => Some(PosTag::Adverb),
            _ => None,
        }
    }
}

/// One synset row: positivity and negativity scores plus the lemmas
/// (with sense ranks) that share them. Objectivity is defined as the
/// remainder so the three scores always sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub pos_tag: PosTag,
    pub synset_id: u32,
    pub pos_score: f64,
    pub neg_score: f64,
    pub terms: Vec<(String, u32)>,
}

impl LexiconEntry {
    pub fn obj_score(&self) -> f64 {
        1.0 - self.pos_score - self.neg_score
    }
}

/// Result of loading a lexicon file. Multi-word lemmas (containing `_`)
/// are retained in the entries but can never match single tokens, so
/// their count is surfaced for reporting.
#[derive(Debug, Clone)]
pub struct LexiconLoad {
    pub entries: Vec<LexiconEntry>,
    pub multiword_lemmas: usize,
}

fn score_in_unit(path: &Path, line_no: usize, field: &str, value: &str) -> Result<f64> {
    let score: f64 = value.parse().map_err(|_| {
        Error::parse(path, line_no, format!("{field} '{value}' is not a number"))
    })?;
    if !(0.0..=1.0).contains(&score) {
        return Err(Error::Validation(format!(
            "{}:{line_no}: {field} {score} outside [0, 1]",
            path.display()
        )));
    }
    Ok(score)
}

fn parse_line(path: &Path, line_no: usize, line: &str) -> Result<LexiconEntry> {
    let mut fields = line.splitn(6, '\t');
    let pos = fields
        .next()
        .ok_or_else(|| Error::parse(path, line_no, "missing POS field"))?;
    let pos_tag = PosTag::parse(pos)
        .ok_or_else(|| Error::parse(path, line_no, format!("unknown POS tag '{pos}'")))?;
    let id = fields
        .next()
        .ok_or_else(|| Error::parse(path, line_no, "missing synset id"))?;
    let synset_id: u32 = id
        .trim()
        .parse()
        .map_err(|_| Error::parse(path, line_no, format!("synset id '{id}' is not numeric")))?;
    let pos_score = score_in_unit(
        path,
        line_no,
        "PosScore",
        fields
            .next()
            .ok_or_else(|| Error::parse(path, line_no, "missing PosScore"))?,
    )?;
    let neg_score = score_in_unit(
        path,
        line_no,
        "NegScore",
        fields
            .next()
            .ok_or_else(|| Error::parse(path, line_no, "missing NegScore"))?,
    )?;
    if pos_score + neg_score > 1.0 + 1e-9 {
        return Err(Error::Validation(format!(
            "{}:{line_no}: PosScore + NegScore = {} exceeds 1",
            path.display(),
            pos_score + neg_score
        )));
    }
    let terms_field = fields
        .next()
        .ok_or_else(|| Error::parse(path, line_no, "missing SynsetTerms"))?;
    let mut terms = Vec::new();
    for term in terms_field.split_whitespace() {
        // Lemma and sense rank are separated by the final '#'.
        let hash = term
            .rfind('#')
            .ok_or_else(|| Error::parse(path, line_no, format!("term '{term}' has no sense rank")))?;
        let (lemma, rank) = term.split_at(hash);
        let rank: u32 = rank[1..].parse().map_err(|_| {
            Error::parse(path, line_no, format!("term '{term}' has a non-numeric sense rank"))
        })?;
        if lemma.is_empty() {
            return Err(Error::parse(path, line_no, format!("term '{term}' has an empty lemma")));
        }
        terms.push((lemma.to_string(), rank));
    }
    if terms.is_empty() {
        return Err(Error::parse(path, line_no, "line has no synset terms"));
    }
    Ok(LexiconEntry {
        pos_tag,
        synset_id,
        pos_score,
        neg_score,
        terms,
    })
}

/// Parse a full SentiWordNet 3.0 file.
pub fn load_sentiwordnet(path: &Path) -> Result<LexiconLoad> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sentiwordnet_str(path, &raw)
}

/// Parse lexicon text that is already in memory; `path` is used only in
/// error messages.
pub fn parse_sentiwordnet_str(path: &Path, content: &str) -> Result<LexiconLoad> {
    let mut entries = Vec::new();
    let mut multiword_lemmas = 0usize;
    for (idx, line) in content.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let entry = parse_line(path, idx + 1, line)?;
        multiword_lemmas += entry.terms.iter().filter(|(l, _)| l.contains('_')).count();
        entries.push(entry);
    }
    Ok(LexiconLoad {
        entries,
        multiword_lemmas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn parse(content: &str) -> Result<LexiconLoad> {
        parse_sentiwordnet_str(Path::new("test.txt"), content)
    }

    #[test]
    fn parses_a_distribution_style_line() {
        // Layout of the first data line of the 3.0 distribution.
        let load = parse("a\t00001740\t0.125\t0\table#1\t(usually followed by `to') having the necessary means\n").unwrap();
        assert_eq!(load.entries.len(), 1);
        let e = &load.entries[0];
        assert_eq!(e.pos_tag, PosTag::Adjective);
        assert_eq!(e.synset_id, 1740);
        assert_eq!(e.pos_score, 0.125);
        assert_eq!(e.neg_score, 0.0);
        assert_eq!(e.terms, vec![("able".to_string(), 1)]);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let load = parse("# SentiWordNet v3.0\n\nn\t1\t0\t0\tdog#1\tgloss\n").unwrap();
        assert_eq!(load.entries.len(), 1);
    }

    #[test]
    fn zero_scores_mean_fully_objective() {
        let load = parse("n\t1\t0\t0\tdog#1\tgloss\n").unwrap();
        assert_eq!(load.entries[0].obj_score(), 1.0);
    }

    #[test]
    fn multiword_terms_counted() {
        let load = parse("n\t1\t0.5\t0\tliving_thing#1 animal#2\tgloss\n").unwrap();
        assert_eq!(load.multiword_lemmas, 1);
        assert_eq!(load.entries[0].terms.len(), 2);
    }

    #[test]
    fn multiple_terms_split_on_final_hash() {
        let load = parse("v\t2\t0\t0.25\trun#2 go#12\tgloss\n").unwrap();
        assert_eq!(
            load.entries[0].terms,
            vec![("run".to_string(), 2), ("go".to_string(), 12)]
        );
    }

    #[test]
    fn malformed_line_names_line_number() {
        let err = parse("n\t1\t0\t0\tdog#1\tgloss\nbroken line\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn score_outside_unit_interval_is_rejected() {
        let err = parse("n\t1\t1.5\t0\tdog#1\tgloss\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn score_sum_above_one_is_rejected() {
        let err = parse("n\t1\t0.75\t0.75\tdog#1\tgloss\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn sum_to_one_invariant_holds_per_entry() {
        let load =
            parse("a\t1\t0.25\t0.5\tbad#1\tg\nn\t2\t0\t0\tthing#1\tg\n").unwrap();
        for e in &load.entries {
            assert!((e.pos_score + e.neg_score + e.obj_score() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn loads_from_disk() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# header").unwrap();
        writeln!(f, "a\t42\t0.5\t0.125\tgood#1 goodly#2\tgloss text").unwrap();
        let load = load_sentiwordnet(f.path()).unwrap();
        assert_eq!(load.entries.len(), 1);
        assert_eq!(load.entries[0].synset_id, 42);
    }
}
