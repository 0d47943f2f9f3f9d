from django.test import SimpleTestCase, override_settings
from rest_framework.exceptions import ValidationError

from .exceptions import CapExceeded, GroupMismatch, InvalidGroup, SizeOutOfRange, WindowOverflow
from .serializers import dump_gset, parse_gset
from .services import (GroupSpec, GSet, add, centered_interval, enumerate_symmetric_sets,
                       intersect, interval, is_symmetric_with_zero, rearrange,
                       symmetric_set_count, translate)


class GroupArithmeticTests(SimpleTestCase):

    def test_cyclic_addition_wraps(self):
        self.assertEqual(add(GroupSpec.cyclic(7), 5, 4), 2)

    def test_window_addition(self):
        self.assertEqual(add(GroupSpec.integer_window(10), 3, -5), -2)

    def test_window_overflow_is_an_error(self):
        with self.assertRaises(WindowOverflow):
            add(GroupSpec.integer_window(10), 8, 5)

    def test_product_addition(self):
        g = GroupSpec.product(2, 3)
        self.assertEqual(g.decode(add(g, (1, 2), (1, 2))), (0, 1))

    def test_negative_cyclic_input_is_reduced(self):
        self.assertEqual(GroupSpec.cyclic(7).encode(-1), 6)

    def test_signed_view(self):
        g = GroupSpec.cyclic(7)
        self.assertEqual([g.signed(e) for e in range(7)], [0, 1, 2, 3, -3, -2, -1])

    def test_invalid_groups(self):
        with self.assertRaises(InvalidGroup):
            GroupSpec.cyclic(0)
        with self.assertRaises(InvalidGroup):
            GroupSpec.product(1, 3)
        with self.assertRaises(InvalidGroup):
            GroupSpec.integer_window(0)

    @override_settings(DIFFREP_DENSE_MAX_CARRIER=100)
    def test_carrier_cap(self):
        with self.assertRaises(SizeOutOfRange):
            GroupSpec.cyclic(101)


class SetOperationTests(SimpleTestCase):

    def setUp(self):
        self.c5 = GroupSpec.cyclic(5)

    def test_translate_wraps(self):
        A = GSet.from_elements(self.c5, [0, 1])
        self.assertEqual(set(translate(A, 4)), {4, 0})

    def test_translate_by_zero_is_identity(self):
        A = GSet.from_elements(self.c5, [0, 1, 3])
        self.assertEqual(translate(A, 0), A)

    def test_translate_preserves_cardinality(self):
        A = GSet.from_elements(GroupSpec.cyclic(11), [0, 2, 3, 9])
        for d in range(11):
            self.assertEqual(len(translate(A, d)), 4)

    def test_intersect(self):
        A = GSet.from_elements(self.c5, [0, 1, 3])
        B = GSet.from_elements(self.c5, [1, 3, 4])
        self.assertEqual(intersect(A, B).elements(), [1, 3])
        self.assertEqual(intersect(A, A), A)

    def test_intersect_across_groups(self):
        A = GSet.from_elements(self.c5, [0])
        B = GSet.from_elements(GroupSpec.cyclic(7), [0])
        with self.assertRaises(GroupMismatch):
            intersect(A, B)

    def test_window_translate_overflow(self):
        A = GSet.from_elements(GroupSpec.integer_window(3), [2, 3])
        with self.assertRaises(WindowOverflow):
            A.translate(1)

    def test_negate_window(self):
        A = GSet.from_elements(GroupSpec.integer_window(4), [-1, 0, 3])
        self.assertEqual(A.negate().elements(), [-3, 0, 1])

    def test_negate_product(self):
        g = GroupSpec.product(2, 4)
        A = GSet.from_elements(g, [(1, 1), (0, 3)])
        self.assertEqual({g.decode(e) for e in A.negate()}, {(1, 3), (0, 1)})

    def test_cyclic_interval_wraps(self):
        self.assertEqual(set(interval(GroupSpec.cyclic(7), -1, 1)), {6, 0, 1})


class CenteredIntervalTests(SimpleTestCase):

    def test_even_size_is_right_heavy(self):
        S = centered_interval(GroupSpec.integer_window(10), 4)
        self.assertEqual(S.elements(), [-1, 0, 1, 2])

    def test_odd_size(self):
        S = centered_interval(GroupSpec.integer_window(10), 5)
        self.assertEqual(S.elements(), [-2, -1, 0, 1, 2])

    def test_size_one(self):
        self.assertEqual(centered_interval(GroupSpec.cyclic(7), 1).elements(), [0])

    def test_cyclic_sizes_and_symmetry(self):
        g = GroupSpec.cyclic(13)
        for size in range(1, 14):
            S = centered_interval(g, size)
            self.assertEqual(len(S), size)
            if size % 2:
                self.assertTrue(is_symmetric_with_zero(S))

    def test_out_of_range(self):
        with self.assertRaises(SizeOutOfRange):
            centered_interval(GroupSpec.cyclic(7), 8)
        with self.assertRaises(SizeOutOfRange):
            centered_interval(GroupSpec.cyclic(7), 0)

    def test_rearrange_keeps_size(self):
        A = GSet.from_elements(GroupSpec.cyclic(11), [0, 4, 7])
        self.assertEqual(set(rearrange(A)), {10, 0, 1})


class SymmetricSetTests(SimpleTestCase):

    def test_symmetric_with_zero(self):
        c7 = GroupSpec.cyclic(7)
        self.assertTrue(is_symmetric_with_zero(GSet.from_elements(c7, [0, 1, 6])))
        self.assertFalse(is_symmetric_with_zero(GSet.from_elements(c7, [0, 1])))
        self.assertFalse(is_symmetric_with_zero(GSet.from_elements(c7, [1, 6])))

    def test_involution_element_in_even_order(self):
        c10 = GroupSpec.cyclic(10)
        D = GSet.from_elements(c10, [x for x in range(10) if x != 5])
        self.assertTrue(is_symmetric_with_zero(D))

    def test_enumerate_c5(self):
        found = {frozenset(D) for D in enumerate_symmetric_sets(GroupSpec.cyclic(5))}
        self.assertEqual(found, {
            frozenset({0}), frozenset({0, 1, 4}), frozenset({0, 2, 3}), frozenset({0, 1, 2, 3, 4}),
        })

    def test_enumeration_counts(self):
        for n, expected in ((3, 2), (7, 8), (13, 64), (10, 32)):
            g = GroupSpec.cyclic(n)
            sets = list(enumerate_symmetric_sets(g))
            self.assertEqual(len(sets), expected)
            self.assertEqual(symmetric_set_count(g), expected)
            self.assertTrue(all(is_symmetric_with_zero(D) for D in sets))

    def test_enumeration_cap(self):
        with self.assertRaises(CapExceeded):
            enumerate_symmetric_sets(GroupSpec.cyclic(37))

    def test_enumeration_needs_cyclic(self):
        with self.assertRaises(GroupMismatch):
            enumerate_symmetric_sets(GroupSpec.product(2, 2))


class SetFileSerializerTests(SimpleTestCase):

    def test_parse_cyclic(self):
        A = parse_gset({'group': {'kind': 'cyclic', 'order': 101}, 'elements': [1, 2, 3]})
        self.assertEqual(A.elements(), [1, 2, 3])

    def test_parse_product(self):
        A = parse_gset({'group': {'kind': 'product', 'orders': [2, 4]}, 'elements': [[1, 3]]})
        self.assertEqual(A.group.decode(A.elements()[0]), (1, 3))

    def test_dump_matches_input(self):
        data = {'group': {'kind': 'integer_window', 'halfwidth': 5}, 'elements': [-2, 0, 4]}
        self.assertEqual(dump_gset(parse_gset(data)), data)

    def test_element_outside_carrier(self):
        with self.assertRaises(ValidationError):
            parse_gset({'group': {'kind': 'cyclic', 'order': 5}, 'elements': [7]})

    def test_missing_group_field(self):
        with self.assertRaises(ValidationError):
            parse_gset({'group': {'kind': 'cyclic'}, 'elements': []})
