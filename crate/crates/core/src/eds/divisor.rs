use crate::function_field::{Place, PlaceLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorComponent {
    pub place: Place,
    pub order: u64,
}

impl DivisorComponent {
    /// Degree on C of this component.
    pub fn degree(&self) -> u64 {
        self.order * self.place.degree() as u64
    }
}

/// D_{nP} as orders at the places of C above each place of the u-line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorOverU {
    pub n: u64,
    /// Sorted by place label, zero orders dropped.
    pub components: Vec<DivisorComponent>,
    pub degree: u64,
}

impl DivisorOverU {
    pub fn new(n: u64, mut components: Vec<DivisorComponent>) -> Self {
        components.retain(|c| c.order > 0);
        components.sort_by(|a, b| a.place.label.cmp(&b.place.label));
        let degree = components.iter().map(|c| c.degree()).sum();
        DivisorOverU {
            n,
            components,
            degree,
        }
    }

    pub fn order_at(&self, label: &PlaceLabel) -> u64 {
        self.components
            .iter()
            .find(|c| &c.place.label == label)
            .map_or(0, |c| c.order)
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &PlaceLabel> {
        self.components.iter().map(|c| &c.place.label)
    }

    /// `self − other` componentwise, or `None` if some order would go negative.
    pub fn checked_sub(&self, other: &DivisorOverU) -> Option<Vec<DivisorComponent>> {
        for c in &other.components {
            if self.order_at(&c.place.label) < c.order {
                return None;
            }
        }
        Some(
            self.components
                .iter()
                .map(|c| DivisorComponent {
                    place: c.place.clone(),
                    order: c.order - other.order_at(&c.place.label),
                })
                .filter(|c| c.order > 0)
                .collect(),
        )
    }
}
