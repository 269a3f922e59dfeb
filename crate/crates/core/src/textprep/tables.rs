//! Fixed data tables: negation cues, English stopwords, contraction
//! expansions. The contraction table is sorted by key for binary search.

pub const DEFAULT_NEGATION_CUES: &[&str] = &[
    "neither", "never", "no", "none", "nor", "not", "nothing", "nowhere",
];

pub const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "also", "although", "am", "an",
    "and", "any", "are", "as", "at", "be", "because", "been", "before", "being", "below",
    "between", "both", "but", "by", "can", "could", "did", "do", "does", "doing", "down",
    "during", "each", "either", "few", "for", "from", "further", "had", "has", "have", "having",
    "he", "her", "here", "hers", "herself", "him", "himself", "his", "how", "however", "i", "if",
    "in", "into", "is", "it", "its", "itself", "just", "may", "me", "might", "more", "most",
    "must", "my", "myself", "neither", "never", "no", "none", "nor", "not", "nothing", "now",
    "nowhere", "of", "off", "on", "once", "only", "onto", "or", "other", "ought", "our", "ours",
    "ourselves", "out", "over", "own", "same", "shall", "she", "should", "since", "so", "some",
    "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there",
    "these", "they", "this", "those", "though", "through", "to", "too", "under", "unless",
    "until", "up", "upon", "us", "very", "was", "we", "were", "what", "when", "where", "whether",
    "which", "while", "who", "whom", "why", "will", "with", "within", "without", "would", "yet",
    "you", "your", "yours", "yourself", "yourselves",
];

pub const CONTRACTIONS: &[(&str, &[&str])] = &[
    ("'d", &["would"]),
    ("'ll", &["will"]),
    ("'m", &["am"]),
    ("'re", &["are"]),
    ("'s", &["is"]),
    ("'tis", &["it", "is"]),
    ("'twas", &["it", "was"]),
    ("'ve", &["have"]),
    ("ain't", &["am", "not"]),
    ("aren't", &["are", "not"]),
    ("c'mon", &["come", "on"]),
    ("can't", &["can", "not"]),
    ("cannot", &["can", "not"]),
    ("could've", &["could", "have"]),
    ("couldn't", &["could", "not"]),
    ("daren't", &["dare", "not"]),
    ("didn't", &["did", "not"]),
    ("doesn't", &["does", "not"]),
    ("don't", &["do", "not"]),
    ("dunno", &["do", "not", "know"]),
    ("gimme", &["give", "me"]),
    ("gonna", &["going", "to"]),
    ("gotta", &["got", "to"]),
    ("hadn't", &["had", "not"]),
    ("hasn't", &["has", "not"]),
    ("haven't", &["have", "not"]),
    ("he'd", &["he", "would"]),
    ("he'll", &["he", "will"]),
    ("he's", &["he", "is"]),
    ("here's", &["here", "is"]),
    ("how'd", &["how", "did"]),
    ("how'll", &["how", "will"]),
    ("how's", &["how", "is"]),
    ("i'd", &["i", "would"]),
    ("i'll", &["i", "will"]),
    ("i'm", &["i", "am"]),
    ("i've", &["i", "have"]),
    ("isn't", &["is", "not"]),
    ("it'd", &["it", "would"]),
    ("it'll", &["it", "will"]),
    ("it's", &["it", "is"]),
    ("kinda", &["kind", "of"]),
    ("lemme", &["let", "me"]),
    ("let's", &["let", "us"]),
    ("ma'am", &["madam"]),
    ("might've", &["might", "have"]),
    ("mightn't", &["might", "not"]),
    ("must've", &["must", "have"]),
    ("mustn't", &["must", "not"]),
    ("n't", &["not"]),
    ("needn't", &["need", "not"]),
    ("oughtn't", &["ought", "not"]),
    ("outta", &["out", "of"]),
    ("shan't", &["shall", "not"]),
    ("she'd", &["she", "would"]),
    ("she'll", &["she", "will"]),
    ("she's", &["she", "is"]),
    ("should've", &["should", "have"]),
    ("shouldn't", &["should", "not"]),
    ("sorta", &["sort", "of"]),
    ("that'd", &["that", "would"]),
    ("that'll", &["that", "will"]),
    ("that's", &["that", "is"]),
    ("there'd", &["there", "would"]),
    ("there'll", &["there", "will"]),
    ("there's", &["there", "is"]),
    ("they'd", &["they", "would"]),
    ("they'll", &["they", "will"]),
    ("they're", &["they", "are"]),
    ("they've", &["they", "have"]),
    ("wanna", &["want", "to"]),
    ("wasn't", &["was", "not"]),
    ("we'd", &["we", "would"]),
    ("we'll", &["we", "will"]),
    ("we're", &["we", "are"]),
    ("we've", &["we", "have"]),
    ("weren't", &["were", "not"]),
    ("what'd", &["what", "did"]),
    ("what'll", &["what", "will"]),
    ("what're", &["what", "are"]),
    ("what's", &["what", "is"]),
    ("what've", &["what", "have"]),
    ("when's", &["when", "is"]),
    ("where'd", &["where", "did"]),
    ("where's", &["where", "is"]),
    ("where've", &["where", "have"]),
    ("who'd", &["who", "would"]),
    ("who'll", &["who", "will"]),
    ("who're", &["who", "are"]),
    ("who's", &["who", "is"]),
    ("who've", &["who", "have"]),
    ("why'd", &["why", "did"]),
    ("why's", &["why", "is"]),
    ("won't", &["will", "not"]),
    ("would've", &["would", "have"]),
    ("wouldn't", &["would", "not"]),
    ("y'all", &["you", "all"]),
    ("you'd", &["you", "would"]),
    ("you'll", &["you", "will"]),
    ("you're", &["you", "are"]),
    ("you've", &["you", "have"]),
];

pub fn lookup_contraction(token: &str) -> Option<&'static [&'static str]> {
    CONTRACTIONS
        .binary_search_by_key(&token, |(key, _)| key)
        .ok()
        .map(|i| CONTRACTIONS[i].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_table_is_sorted_and_unique() {
        for pair in CONTRACTIONS.windows(2) {
            assert!(pair[0].0 < pair[1].0, "{} !< {}", pair[0].0, pair[1].0);
        }
    }

    #[test]
    fn contraction_expansions_are_lowercase_words() {
        for (key, expansion) in CONTRACTIONS {
            assert!(!expansion.is_empty(), "{key} has empty expansion");
            for word in *expansion {
                assert!(!word.is_empty());
                assert_eq!(word.to_lowercase(), **word);
                assert!(!word.contains('\''), "{key} expands to contraction {word}");
            }
        }
    }

    #[test]
    fn every_negation_cue_is_a_stopword() {
        for cue in DEFAULT_NEGATION_CUES {
            assert!(DEFAULT_STOPWORDS.contains(cue), "cue {cue} missing from stoplist");
        }
    }

    #[test]
    fn table_sizes() {
        assert!(DEFAULT_STOPWORDS.len() >= 140);
        assert!(CONTRACTIONS.len() >= 90);
        assert_eq!(DEFAULT_NEGATION_CUES.len(), 8);
    }

    #[test]
    fn lookup_hits_and_misses() {
        assert_eq!(lookup_contraction("can't"), Some(&["can", "not"][..]));
        assert_eq!(lookup_contraction("stand"), None);
    }

    #[test]
    fn stopwords_sorted_without_duplicates() {
        for pair in DEFAULT_STOPWORDS.windows(2) {
            assert!(pair[0] < pair[1], "{} !< {}", pair[0], pair[1]);
        }
    }
}
