"""Example fixtures and seeded synthetic instance generation.

The synthetic generator is a pure function of (seed, profile): the same
inputs always produce the same instance, which the property suites rely on.
Replication controls how many carrier copies a state record gets;
aggregation controls both multi-entity state records and merged reflection
records, so a profile with replication 1 and aggregation 0 yields a
bijective instance (functional relation, every reflection single-sourced).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    Information,
    OitError,
    ReflectionRecord,
    StateRecord,
    assemble,
)


class DegenerateProfile(OitError):
    """The generation profile has no valid instances."""


@dataclass(frozen=True)
class Profile:
    """Size and shape knobs for synthetic instances."""

    entities: int = 4
    media: int = 4
    tick_span: int = 8
    replication: int = 2
    aggregation: float = 0.25

    def __post_init__(self):
        if self.entities < 1 or self.media < 1 or self.tick_span < 1:
            raise DegenerateProfile("entity, media and tick-span counts must be >= 1")
        if self.replication < 1:
            raise DegenerateProfile("replication factor must be >= 1")
        if not 0.0 <= self.aggregation <= 1.0:
            raise DegenerateProfile("aggregation probability must lie in [0, 1]")


def generate_synthetic(seed: int, profile: Profile = Profile()) -> Information:
    """Deterministic valid instance for the given seed and profile."""
    rng = random.Random(seed)
    entity_pool = ["e%d" % i for i in range(1, profile.entities + 1)]
    media_pool = ["m%d" % i for i in range(1, profile.media + 1)]

    states = []
    n_states = 2 * profile.entities
    for i in range(1, n_states + 1):
        if profile.entities >= 2 and rng.random() < profile.aggregation:
            size = rng.randint(2, min(3, profile.entities))
            ents = rng.sample(entity_pool, size)
        else:
            ents = [rng.choice(entity_pool)]
        tick = rng.randint(1, profile.tick_span)
        states.append(StateRecord("s%d" % i, frozenset(ents), tick, "v%d" % i))

    reflections = []
    links = []
    used_identities = set()
    rid = 0

    def fresh_reflection(state):
        nonlocal rid
        rid += 1
        medium = rng.choice(media_pool)
        tick = state.tick + rng.randint(0, 2)
        value = state.value
        while (frozenset({medium}), tick, value) in used_identities:
            tick += 1
        used_identities.add((frozenset({medium}), tick, value))
        rec = ReflectionRecord("r%d" % rid, frozenset({medium}), tick, value)
        reflections.append(rec)
        return rec

    for state in states:
        if reflections and rng.random() < profile.aggregation:
            # merge: this state reuses a previous carrier record
            target = rng.choice(reflections)
            links.append((state.id, target.id))
        else:
            links.append((state.id, fresh_reflection(state).id))
        for _ in range(rng.randrange(profile.replication)):
            links.append((state.id, fresh_reflection(state).id))

    return assemble(states, reflections, links)


def random_link_subset(info: Information, rng: random.Random) -> frozenset:
    """A random nonempty link subset, usable as a sub-information selector."""
    links = sorted(info.links)
    size = rng.randint(1, len(links))
    return frozenset(rng.sample(links, size))


def nested_link_subsets(info: Information, rng: random.Random):
    """Two nonempty link subsets with the first contained in the second."""
    outer = sorted(random_link_subset(info, rng))
    size = rng.randint(1, len(outer))
    inner = frozenset(rng.sample(outer, size))
    return inner, frozenset(outer)


def example_instance() -> Information:
    """The small worked instance used across the docs, tests and fixtures.

    Two entities observed by three state records (one of them aggregated
    over both entities) and carried by three reflection records, with the
    first state replicated onto two media and the last two states merged
    into one carrier record.
    """
    states = [
        StateRecord("s1", frozenset({"a"}), 1, "v1"),
        StateRecord("s2", frozenset({"b"}), 2, "v2"),
        StateRecord("s3", frozenset({"a", "b"}), 3, "v3"),
    ]
    reflections = [
        ReflectionRecord("r1", frozenset({"m1"}), 4, "v1"),
        ReflectionRecord("r2", frozenset({"m2"}), 3, "v23"),
        ReflectionRecord("r3", frozenset({"m3"}), 4, "v1"),
    ]
    links = [("s1", "r1"), ("s1", "r3"), ("s2", "r2"), ("s3", "r2")]
    return assemble(states, reflections, links)


def identity_relay(info: Information, media_map: dict, tick_shift: int = 0) -> Information:
    """A second stage re-carrying every reflection of ``info`` onto new media.

    The relay's states mirror the reflections content for content (media
    tokens acting as entities), so composing ``info`` with the relay always
    satisfies the interface precondition.  ``media_map`` must be injective
    over the carrier.
    """
    states = []
    reflections = []
    links = []
    for rec in sorted(info.reflections, key=lambda r: r.id):
        sid = "t_%s" % rec.id
        rid = "y_%s" % rec.id
        states.append(StateRecord(sid, rec.media, rec.tick, rec.value))
        reflections.append(
            ReflectionRecord(
                rid,
                frozenset(media_map[m] for m in rec.media),
                rec.tick + tick_shift,
                rec.value,
            )
        )
        links.append((sid, rid))
    return assemble(states, reflections, links)
