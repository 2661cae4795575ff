//! Workbench for reasoning about finitely presented equational theories and
//! normal (uni)modal logics through their Godel codes.
//!
//! The crate is organised around one numbering scheme ([`codec`]) shared by
//! every engine:
//!
//! * [`codec`]: Cantor pairing, sequence codes, and codes for terms,
//!   equations, modal formulas, and finite frames, together with the
//!   recursive predicates (replacement, substitution) other modules quantify
//!   over.
//! * [`eqlogic`]: bounded saturation under the closure rules of equational
//!   consequence, plus finite-algebra counter-model search.
//! * [`kripke`]: finite-frame semantics: validity checking, enumeration of
//!   frames up to isomorphism, and bounded comparisons of frame classes.
//! * [`hilbert`]: explicit proof objects for modal logics, a pure proof
//!   checker, bounded proof search, and a bounded pretabularity certifier.
//! * [`arith`]: arithmetical formulas with set parameters: builders for the
//!   interval, frame-class, and pretabularity conditions, prefix
//!   classification, and bounded evaluation.
//! * [`lattice`]: downset lattices of finite chains and the checks the other
//!   modules' order-theoretic arguments lean on.
//!
//! All public operations are deterministic: identical inputs produce
//! identical results, independent of thread count.

pub mod arith;
pub mod codec;
pub mod eqlogic;
pub mod hilbert;
pub mod kripke;
pub mod lattice;
