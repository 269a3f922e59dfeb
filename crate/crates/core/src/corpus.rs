//! Ingestion of the polarity snippet corpus: two plain-text files, one
//! snippet per line, positive and negative. The reference files are not
//! valid UTF-8, so decoding defaults to Windows-1252.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Binary document polarity. Maps to the {-1, +1} targets used by the
/// margin classifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    /// Class target in {-1.0, +1.0}.
    pub fn target(self) -> f64 {
        match self {
            Polarity::Positive => 1.0,
            Polarity::Negative => -1.0,
        }
    }

    /// Decision-value sign to label; zero breaks toward Positive.
    pub fn from_sign(value: f64) -> Self {
        if value >= 0.0 {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

/// One raw snippet with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    pub text: String,
    pub label: Polarity,
}

/// The loaded snippet corpus, positive records first, file order preserved
/// within each class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCorpus {
    pub records: Vec<RawRecord>,
}

impl RawCorpus {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn count(&self, label: Polarity) -> usize {
        self.records.iter().filter(|r| r.label == label).count()
    }

    pub fn labels(&self) -> Vec<Polarity> {
        self.records.iter().map(|r| r.label).collect()
    }
}

/// 8-bit text encoding used to decode the snippet files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextEncoding {
    Windows1252,
    Latin1,
    Utf8,
}

impl TextEncoding {
    pub fn name(self) -> &'static str {
        match self {
            TextEncoding::Windows1252 => "windows-1252",
            TextEncoding::Latin1 => "latin-1",
            TextEncoding::Utf8 => "utf-8",
        }
    }
}

impl std::str::FromStr for TextEncoding {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "windows-1252" | "windows1252" | "cp1252" => Ok(TextEncoding::Windows1252),
            "latin-1" | "latin1" | "iso-8859-1" => Ok(TextEncoding::Latin1),
            "utf-8" | "utf8" => Ok(TextEncoding::Utf8),
            other => Err(format!("unknown encoding '{other}'")),
        }
    }
}

/// How snippet files are decoded. Strict mode turns undecodable bytes into
/// errors instead of replacement characters.
#[derive(Debug, Clone, Copy)]
pub struct DecodeOptions {
    pub encoding: TextEncoding,
    pub strict: bool,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            encoding: TextEncoding::Windows1252,
            strict: false,
        }
    }
}

// Windows-1252 mapping for the 0x80..=0x9F range; None marks the five
// unassigned bytes.
const CP1252_HIGH: [Option<char>; 32] = [
    Some('\u{20AC}'), // 0x80
    None,             // 0x81
    Some('\u{201A}'), // 0x82
    Some('\u{0192}'), // 0x83
    Some('\u{201E}'), // 0x84
    Some('\u{2026}'), // 0x85
    Some('\u{2020}'), // 0x86
    Some('\u{2021}'), // 0x87
    Some('\u{02C6}'), // 0x88
    Some('\u{2030}'), // 0x89
    Some('\u{0160}'), // 0x8A
    Some('\u{2039}'), // 0x8B
    Some('\u{0152}'), // 0x8C
    None,             // 0x8D
    Some('\u{017D}'), // 0x8E
    None,             // 0x8F
    None,             // 0x90
    Some('\u{2018}'), // 0x91
    Some('\u{2019}'), // 0x92
    Some('\u{201C}'), // 0x93
    Some('\u{201D}'), // 0x94
    Some('\u{2022}'), // 0x95
    Some('\u{2013}'), // 0x96
    Some('\u{2014}'), // 0x97
    Some('\u{02DC}'), // 0x98
    Some('\u{2122}'), // 0x99
    Some('\u{0161}'), // 0x9A
    Some('\u{203A}'), // 0x9B
    Some('\u{0153}'), // 0x9C
    None,             // 0x9D
    Some('\u{017E}'), // 0x9E
    Some('\u{0178}'), // 0x9F
];

fn decode_single_byte(
    bytes: &[u8],
    encoding: TextEncoding,
    strict: bool,
    path: &Path,
    line_no: usize,
) -> Result<String> {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        let ch = match encoding {
            TextEncoding::Latin1 => Some(b as char),
            TextEncoding::Windows1252 => {
                if (0x80..=0x9F).contains(&b) {
                    CP1252_HIGH[(b - 0x80) as usize]
                } else {
                    Some(b as char)
                }
            }
            TextEncoding::Utf8 => unreachable!("handled by decode_line"),
        };
        match ch {
            Some(c) => out.push(c),
            None if strict => {
                return Err(Error::Decode {
                    path: path.to_path_buf(),
                    line: line_no,
                    byte: b,
                    encoding: encoding.name(),
                })
            }
            None => out.push('\u{FFFD}'),
        }
    }
    Ok(out)
}

fn decode_line(bytes: &[u8], options: &DecodeOptions, path: &Path, line_no: usize) -> Result<String> {
    match options.encoding {
        TextEncoding::Utf8 => match std::str::from_utf8(bytes) {
            Ok(s) => Ok(s.to_string()),
            Err(e) if options.strict => Err(Error::Decode {
                path: path.to_path_buf(),
                line: line_no,
                byte: bytes[e.valid_up_to()],
                encoding: "utf-8",
            }),
            Err(_) => Ok(String::from_utf8_lossy(bytes).into_owned()),
        },
        _ => decode_single_byte(bytes, options.encoding, options.strict, path, line_no),
    }
}

/// Read one snippet file: one record per non-blank line, file order kept.
pub fn load_snippet_file(
    path: &Path,
    label: Polarity,
    options: &DecodeOptions,
) -> Result<Vec<RawRecord>> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (idx, line) in raw.split(|&b| b == b'\n').enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        let text = decode_line(line, options, path, idx + 1)?;
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        records.push(RawRecord {
            text: text.to_string(),
            label,
        });
    }
    Ok(records)
}

/// Load the two-file polarity corpus. Positive records come first; order
/// within each file is preserved.
pub fn load_polarity_corpus(
    pos_path: &Path,
    neg_path: &Path,
    options: &DecodeOptions,
) -> Result<RawCorpus> {
    let mut records = load_snippet_file(pos_path, Polarity::Positive, options)?;
    records.extend(load_snippet_file(neg_path, Polarity::Negative, options)?);
    Ok(RawCorpus { records })
}
