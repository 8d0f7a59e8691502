use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A finite, strictly totally ordered universe of labeled points. The order
/// is positional: element `i` precedes element `j` exactly when `i < j` in
/// the label sequence. All code/pattern semantics key off this single order;
/// reordering is a new ground.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedGround {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::InvalidInput("empty label".into()));
    }
    if let Some(c) = label
        .chars()
        .find(|c| c.is_whitespace() || matches!(c, ',' | ':' | '#' | '{' | '}'))
    {
        return Err(Error::InvalidInput(format!(
            "label {label:?} contains reserved character {c:?}"
        )));
    }
    Ok(())
}

impl OrderedGround {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            validate_label(label)?;
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate ground label {label:?}"
                )));
            }
        }
        Ok(OrderedGround { labels, index })
    }

    /// The chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        OrderedGround::new((1..=n).map(|i| i.to_string())).expect("chain labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn subset_from_labels<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty_subset();
        for label in labels {
            let label = label.as_ref();
            match self.position(label) {
                Some(i) => s.set_bit(i, true),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "unknown ground label {label:?}"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Parses a comma-separated label list; the empty string is the empty set.
    pub fn subset_from_list(&self, list: &str) -> Result<Subset> {
        let trimmed = list.trim();
        if trimmed.is_empty() {
            return Ok(self.empty_subset());
        }
        self.subset_from_labels(trimmed.split(',').map(str::trim))
    }

    /// Renders a subset as a comma-separated label list ("" for the empty set).
    pub fn label_list(&self, subset: &Subset) -> String {
        assert_eq!(subset.len(), self.len(), "subset width mismatch");
        subset
            .iter_indices()
            .map(|i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn format_subset(&self, subset: &Subset) -> String {
        format!("{{{}}}", self.label_list(subset))
    }

    /// The sub-ground induced by a subset, inheriting label order.
    pub fn restrict(&self, subset: &Subset) -> OrderedGround {
        assert_eq!(subset.len(), self.len(), "subset width mismatch");
        let labels: Vec<String> = subset
            .iter_indices()
            .map(|i| self.labels[i].clone())
            .collect();
        OrderedGround::new(labels).expect("sub-ground labels stay valid")
    }
}

impl fmt::Debug for OrderedGround {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGround[{}]", self.labels.join(" "))
    }
}
