use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The four number systems covered by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    En,
    Da,
    Fr,
    Ja,
}

impl Language {
    pub const ALL: [Language; 4] = [Language::En, Language::Da, Language::Fr, Language::Ja];

    /// Lower-case ISO 639-1 code, as used in file names and on the command line.
    pub fn code(self) -> &'static str {
        match self {
            Language::En => "en",
            Language::Da => "da",
            Language::Fr => "fr",
            Language::Ja => "ja",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "en" => Ok(Language::En),
            "da" => Ok(Language::Da),
            "fr" => Ok(Language::Fr),
            "ja" => Ok(Language::Ja),
            _ => Err(Error::UnsupportedLanguage(s.to_string())),
        }
    }
}
