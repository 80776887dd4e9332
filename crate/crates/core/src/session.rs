//! Linear undo/redo history over presentation snapshots.

use serde::Serialize;
use thiserror::Error;

use crate::cs::{Presentation, Report};
use crate::rewrite::{self, Diff, RewriteError, RewriteOp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistoryEntry {
    pub snapshot: Presentation,
    /// The op that produced this snapshot. `None` for the initial one.
    pub op: Option<RewriteOp>,
    pub diff: Diff,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("initial presentation is invalid")]
    Invalid(Report),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("nothing to redo")]
    NothingToRedo,
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::Invalid(_) => "invalid",
            SessionError::Rewrite(e) => e.code(),
            SessionError::NothingToUndo => "nothing-to-undo",
            SessionError::NothingToRedo => "nothing-to-redo",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    history: Vec<HistoryEntry>,
    cursor: usize,
}

impl Session {
    pub fn new(p: Presentation) -> Result<Session, SessionError> {
        let report = p.validate();
        if !report.ok {
            return Err(SessionError::Invalid(report));
        }
        Ok(Session { history: vec![HistoryEntry { snapshot: p, op: None, diff: Diff::default() }], cursor: 0 })
    }

    pub fn current(&self) -> &Presentation {
        &self.history[self.cursor].snapshot
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn can_undo(&self) -> bool {
        self.cursor > 0
    }

    pub fn can_redo(&self) -> bool {
        self.cursor + 1 < self.history.len()
    }

    /// Applies `op` to the current snapshot. On success the redo tail is
    /// discarded; on failure nothing changes.
    pub fn apply(&mut self, op: RewriteOp) -> Result<&Diff, SessionError> {
        let (next, diff) = rewrite::apply(self.current(), &op)?;
        self.history.truncate(self.cursor + 1);
        self.history.push(HistoryEntry { snapshot: next, op: Some(op), diff });
        self.cursor += 1;
        Ok(&self.history[self.cursor].diff)
    }

    pub fn undo(&mut self) -> Result<&Presentation, SessionError> {
        if !self.can_undo() {
            return Err(SessionError::NothingToUndo);
        }
        self.cursor -= 1;
        Ok(self.current())
    }

    pub fn redo(&mut self) -> Result<&Presentation, SessionError> {
        if !self.can_redo() {
            return Err(SessionError::NothingToRedo);
        }
        self.cursor += 1;
        Ok(self.current())
    }

    /// Rebuilds snapshot `index` from the initial one by folding diffs.
    pub fn replay(&self, index: usize) -> Option<Presentation> {
        if index >= self.history.len() {
            return None;
        }
        Some(self.history[1..=index].iter().fold(self.history[0].snapshot.clone(), |p, e| e.diff.apply(&p)))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::cs::{Component, ComponentKind, Family, Label};

    fn sample() -> Presentation {
        let mut p = Presentation::new();
        for (name, kl, cl) in [("a", Label::Zero, Label::Bullet), ("b", Label::Bullet, Label::Zero)] {
            let cid = format!("{name}'");
            p.add_pair(
                Component {
                    id: name.into(),
                    kind: ComponentKind::Knot,
                    family: Family::Free,
                    label: kl,
                    framing: 0,
                    partner: cid.clone(),
                },
                Component {
                    id: cid,
                    kind: ComponentKind::LinkingCircle,
                    family: Family::Free,
                    label: cl,
                    framing: 0,
                    partner: name.into(),
                },
            );
        }
        p.arrows.insert(("a".into(), "b".into()));
        p
    }

    fn abstract_op(id: &str) -> RewriteOp {
        RewriteOp::MakeAbstract { targets: BTreeSet::from([id.to_string()]) }
    }

    #[test]
    fn undo_redo_and_truncation() {
        let mut s = Session::new(sample()).unwrap();
        let start = s.current().clone();
        s.apply(abstract_op("a")).unwrap();
        s.apply(abstract_op("b'")).unwrap();
        assert_eq!(s.history().len(), 3);
        s.undo().unwrap();
        s.undo().unwrap();
        assert_eq!(s.current(), &start);
        assert!(matches!(s.undo(), Err(SessionError::NothingToUndo)));
        s.redo().unwrap();
        assert!(s.can_redo());
        s.apply(abstract_op("b'")).unwrap();
        assert_eq!(s.history().len(), 3);
        assert!(!s.can_redo());
        for i in 0..s.history().len() {
            assert_eq!(s.replay(i).as_ref(), Some(&s.history()[i].snapshot));
        }
    }

    #[test]
    fn failed_apply_changes_nothing() {
        let mut s = Session::new(sample()).unwrap();
        let before = s.history().to_vec();
        let err = s.apply(abstract_op("zzz")).unwrap_err();
        assert_eq!(err.code(), "not-found");
        assert_eq!(s.history(), &before[..]);
        assert_eq!(s.cursor(), 0);
    }
}
