import numpy as np
import pytest
from pydantic import ValidationError

from reprank.attacks import (
    AttackKind,
    AttackSpec,
    attack_size,
    inject,
    most_rated_item,
    robustness,
)
from reprank.base import AttributeSchema, Dataset, InputError, RatingsMatrix, UserProfiles
from reprank.pipeline import MethodSpec

N_ITEMS = 20


@pytest.fixture
def community() -> Dataset:
    """100 users who all rate ``i0`` plus a few other items on a 5-star scale."""
    rng = np.random.default_rng(5)
    entries = []
    for u in range(100):
        entries.append((f"u{u}", "i0", float(rng.integers(2, 6))))
        for i in rng.choice(np.arange(1, N_ITEMS), size=4, replace=False):
            entries.append((f"u{u}", f"i{i}", float(rng.integers(1, 6))))
    ratings = RatingsMatrix.from_entries(entries, 5, item_ids=[f"i{i}" for i in range(N_ITEMS)])
    schema = AttributeSchema.from_mapping({"gender": ("m", "f"), "age": ("young", "old")})
    profiles = UserProfiles(
        assignment={
            f"u{u}": {"gender": ("m", "f")[u % 2], "age": ("young", "old")[u % 3 == 0]}
            for u in range(100)
        }
    )
    return Dataset(name="community", ratings=ratings, schema=schema, profiles=profiles)


def _new_entries(result) -> list[tuple[str, str, float]]:
    return [e for e in result.dataset.ratings.entries() if e[0] in result.attacker_ids]


class TestAttackSpec:
    @pytest.mark.parametrize("proportion", [0.0, 1.0, 1.5])
    def test_proportion_bounds(self, proportion: float) -> None:
        with pytest.raises(ValidationError):
            AttackSpec(kind=AttackKind.LOVE_HATE, proportion=proportion)

    def test_defaults(self) -> None:
        spec = AttackSpec(kind="hate_love", proportion=0.1)
        assert spec.kind == AttackKind.HATE_LOVE
        assert spec.side_set_size == 10
        assert spec.attackers_in_partitions


class TestTargetedAttacks:
    def test_love_hate(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="i0", proportion=0.25)
        result = inject(community, spec)
        assert result.n_attackers == 25
        assert result.target_item == "i0"
        R = result.dataset.ratings
        for user_id in result.attacker_ids:
            items = R.items_of(user_id)
            assert len(items) == 11
            assert R.rating(user_id, "i0") == 1.0
            assert all(R.rating(user_id, i) == pytest.approx(0.2) for i in items if i != "i0")

    def test_hate_love(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.HATE_LOVE, target_item="i0", proportion=0.1)
        result = inject(community, spec)
        assert result.n_attackers == 10
        R = result.dataset.ratings
        for user_id in result.attacker_ids:
            assert R.rating(user_id, "i0") == pytest.approx(0.2)
            assert all(R.rating(user_id, i) == 1.0 for i in R.items_of(user_id) if i != "i0")

    def test_default_target_is_most_rated(self, community) -> None:
        assert most_rated_item(community.ratings) == "i0"
        result = inject(community, AttackSpec(kind=AttackKind.LOVE_HATE, proportion=0.05))
        assert result.target_item == "i0"
        assert result.n_attackers == 5

    def test_most_rated_tie_goes_to_smallest_id(self) -> None:
        R = RatingsMatrix.from_entries([("u", "b", 1), ("v", "a", 1)], 5)
        assert most_rated_item(R) == "a"

    def test_floor_of_proportion(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="i0", proportion=0.35)
        assert attack_size(community.ratings, spec, "i0") == 35
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="i0", proportion=0.129)
        assert attack_size(community.ratings, spec, "i0") == 12

    def test_tiny_proportion_injects_nothing(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="i0", proportion=0.005)
        result = inject(community, spec)
        assert result.n_attackers == 0
        assert result.dataset is community

    def test_unknown_target(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="nope", proportion=0.1)
        with pytest.raises(InputError, match="not in the ratings matrix"):
            inject(community, spec)

    @pytest.mark.parametrize("kind", list(AttackKind))
    def test_side_set_leaves_one_item_out(self, community, kind: AttackKind) -> None:
        spec = AttackSpec(kind=kind, proportion=0.1, side_set_size=N_ITEMS)
        with pytest.raises(InputError, match="exceeds n_items - 1"):
            inject(community, spec)

    @pytest.mark.parametrize("kind", list(AttackKind))
    def test_largest_side_set(self, community, kind: AttackKind) -> None:
        result = inject(community, AttackSpec(kind=kind, proportion=0.1, side_set_size=N_ITEMS - 1))
        assert result.attacker_ids


class TestRandomSpam:
    def test_rating_count(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.RANDOM_SPAM, proportion=0.1)
        result = inject(community, spec)
        added = _new_entries(result)
        assert len(added) == int(0.1 * community.ratings.n_entries)
        assert result.n_attackers == -(-len(added) // 10)
        assert result.target_item is None

    def test_whole_star_values(self, community) -> None:
        result = inject(community, AttackSpec(kind=AttackKind.RANDOM_SPAM, proportion=0.2))
        values = {round(v * 5, 9) for _, _, v in _new_entries(result)}
        assert values <= {1.0, 2.0, 3.0, 4.0, 5.0}


class TestInjectionContract:
    @pytest.mark.parametrize("kind", list(AttackKind))
    def test_existing_ratings_untouched(self, community, kind: AttackKind) -> None:
        result = inject(community, AttackSpec(kind=kind, proportion=0.3))
        after = set(result.dataset.ratings.entries())
        assert set(community.ratings.entries()) <= after
        assert len(after) == community.ratings.n_entries + len(_new_entries(result))

    @pytest.mark.parametrize("kind", list(AttackKind))
    def test_deterministic(self, community, kind: AttackKind) -> None:
        spec = AttackSpec(kind=kind, proportion=0.2, rng_seed=9)
        first, second = inject(community, spec), inject(community, spec)
        assert first.attacker_ids == second.attacker_ids
        assert list(first.dataset.ratings.entries()) == list(second.dataset.ratings.entries())
        assert first.dataset.profiles == second.dataset.profiles

    def test_seed_changes_attack(self, community) -> None:
        first = inject(community, AttackSpec(kind=AttackKind.RANDOM_SPAM, proportion=0.2))
        second = inject(
            community, AttackSpec(kind=AttackKind.RANDOM_SPAM, proportion=0.2, rng_seed=1)
        )
        assert set(_new_entries(first)) != set(_new_entries(second))

    def test_attackers_get_declared_classes(self, community) -> None:
        result = inject(community, AttackSpec(kind=AttackKind.LOVE_HATE, proportion=0.3))
        profiles = result.dataset.profiles
        for user_id in result.attacker_ids:
            assert profiles.class_of(user_id, "gender") in ("m", "f")
            assert profiles.class_of(user_id, "age") in ("young", "old")

    def test_attackers_outside_partitions(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, proportion=0.3, attackers_in_partitions=False)
        result = inject(community, spec)
        for user_id in result.attacker_ids:
            assert result.dataset.profiles.assignment[user_id] == {"gender": None, "age": None}

    def test_attacker_ids_avoid_existing_users(self) -> None:
        R = RatingsMatrix.from_entries(
            [("attacker-0", "a", 3), ("x", "a", 4), ("x", "b", 2), ("y", "b", 5)], 5
        )
        schema = AttributeSchema.from_mapping({"g": ("p", "q")})
        dataset = Dataset(name="clash", ratings=R, schema=schema, profiles=UserProfiles())
        spec = AttackSpec(
            kind=AttackKind.LOVE_HATE, target_item="a", proportion=0.5, side_set_size=1
        )
        result = inject(dataset, spec)
        assert result.attacker_ids == frozenset({"attacker-1"})


class TestRobustness:
    def test_no_attackers_scores_one(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.LOVE_HATE, target_item="i0", proportion=0.005)
        result = inject(community, spec)
        assert robustness(community, result.dataset) == 1.0

    def test_attack_lowers_tau(self, community) -> None:
        spec = AttackSpec(kind=AttackKind.HATE_LOVE, proportion=0.4, side_set_size=3)
        result = inject(community, spec)
        tau = robustness(community, result.dataset, method=MethodSpec.parse("aa"))
        assert -1.0 <= tau < 1.0
