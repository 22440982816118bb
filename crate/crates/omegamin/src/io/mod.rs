//! Text formats: the native `.aut` format (authoritative, abstract
//! letters, bit-exact canonical serialisation) and a HOA v1 subset for
//! interop (letters encoded as binary valuations of atomic propositions).

mod hoa;
mod native;

pub use hoa::{export_hoa, import_hoa};
pub use native::{parse_native, serialise_native};
