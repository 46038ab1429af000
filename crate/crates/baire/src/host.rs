use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A host-code closure with a label. Identity is by allocation, so two hosts
/// are equal only if one is a clone of the other. Hosts cannot be serialized.
pub struct Host<F: ?Sized> {
    pub label: String,
    id: u64,
    pub f: Arc<F>,
}

impl<F: ?Sized> Host<F> {
    pub fn new(label: impl Into<String>, f: Arc<F>) -> Self {
        Host {
            label: label.into(),
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            f,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }
}

impl<F: ?Sized> Clone for Host<F> {
    fn clone(&self) -> Self {
        Host {
            label: self.label.clone(),
            id: self.id,
            f: self.f.clone(),
        }
    }
}

impl<F: ?Sized> PartialEq for Host<F> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl<F: ?Sized> fmt::Debug for Host<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "host:{}#{}", self.label, self.id)
    }
}
