use serde::{Deserialize, Serialize};

/// Every rational is a string `p/q` (or an integer); no floats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub status: Status,
    pub input: String,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Term>>,
    pub stats: Stats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    SosRational,
    SosRealOnly,
    NotSos,
    PointFound,
    NoRationalPoint,
    EmptySet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::SosRational => "sos_rational",
            Status::SosRealOnly => "sos_real_only",
            Status::NotSos => "not_sos",
            Status::PointFound => "point_found",
            Status::NoRationalPoint => "no_rational_point",
            Status::EmptySet => "empty_set",
        }
    }
}

/// `weight * polynomial^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub weight: String,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub max_bit_length: u64,
    pub elapsed_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_names_match_serde() {
        use Status::*;
        for s in [SosRational, SosRealOnly, NotSos, PointFound, NoRationalPoint, EmptySet] {
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.as_str()));
        }
    }

    #[test]
    fn absent_fields_are_omitted_and_restored() {
        let doc = CertificateDocument {
            status: Status::NoRationalPoint,
            input: "(= (^ y 2) 2)".into(),
            variables: vec!["y".into()],
            point: None,
            certificate: None,
            stats: Stats { max_bit_length: 0, elapsed_ms: 1 },
        };
        let json = serde_json::to_string(&doc).unwrap();
        assert!(!json.contains("\"point\":") && !json.contains("\"certificate\":"));
        assert_eq!(serde_json::from_str::<CertificateDocument>(&json).unwrap(), doc);
    }
}
