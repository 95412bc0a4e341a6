import tempfile

import numpy as np
from django.test import SimpleTestCase

from detector.exceptions import ConfigurationError, DatasetError
from detector.preprocessing import (
    Scenario,
    SplitSpec,
    build_feature_schema,
    carve_subset,
    carve_subsets,
    class_counts,
    consolidate_labels,
    drop_single_sample_classes,
    load_prepared,
    make_folds,
    multiclass_eligible,
    ordered_class_names,
    prepare_dataset,
    save_prepared,
    split_indices,
    subsample_contamination,
    vectorize,
)
from detector.tests.helpers import encoded_dataset, make_flow, make_flows


class LabelTest(SimpleTestCase):

    def test_consolidation_abbreviates_long_labels(self):
        self.assertEqual(consolidate_labels(make_flow(0, 'PartOfAHorizontalPortScan')), 'POAHPS')
        self.assertEqual(consolidate_labels(make_flow(0, 'C&C-FileDownload')), 'C&C-FD')
        self.assertEqual(consolidate_labels(make_flow(0, 'DDoS')), 'DDoS')
        self.assertEqual(consolidate_labels(make_flow(0)), 'Benign')

    def test_class_names_put_benign_first(self):
        self.assertEqual(ordered_class_names(['DDoS', 'Benign', 'C&C', 'DDoS']), ['Benign', 'C&C', 'DDoS'])

    def test_single_sample_classes_are_dropped(self):
        flows = make_flows({None: 10, 'C&C': 3, 'DDoS': 1})
        kept = drop_single_sample_classes(flows)

        self.assertEqual(len(kept), 13)
        self.assertEqual(class_counts(kept), {'Benign': 10, 'C&C': 3})
        self.assertEqual(kept, flows[:13])

    def test_binary_scenario_keeps_rare_attack_types(self):
        flows = make_flows({None: 10, 'C&C': 3, 'DDoS': 1})
        self.assertEqual(len(drop_single_sample_classes(flows, Scenario.BINARY)), 14)

    def test_multiclass_needs_two_malicious_classes(self):
        self.assertTrue(multiclass_eligible(['Benign', 'C&C', 'DDoS']))
        self.assertFalse(multiclass_eligible(['Benign', 'POAHPS']))


class EncodingTest(SimpleTestCase):

    def setUp(self):
        self.train = [
            make_flow(0, proto='udp', service='dns', orig_bytes=10),
            make_flow(1, proto='tcp', service=None, orig_bytes=30),
            make_flow(2, 'DDoS', proto='tcp', service='http', orig_bytes=20),
        ]

    def test_vocabulary_order(self):
        schema = build_feature_schema(self.train)
        self.assertEqual(schema.categorical_vocabularies['proto'], ['tcp', 'udp', 'unknown'])
        self.assertEqual(schema.categorical_vocabularies['service'], ['dns', 'http', 'missing', 'unknown'])
        self.assertEqual(schema.scale_params['orig_bytes'], (10.0, 30.0))

    def test_unseen_values_land_in_unknown_and_numbers_are_clipped(self):
        schema = build_feature_schema(self.train)
        flow = make_flow(9, proto='icmp', orig_bytes=50)
        dataset = vectorize([flow], schema, ['Benign', 'DDoS'])

        names = schema.feature_names
        row = dict(zip(names, dataset.features[0]))
        self.assertEqual(row['proto=unknown'], 1.0)
        self.assertEqual(row['proto=tcp'] + row['proto=udp'], 0.0)
        self.assertEqual(row['orig_bytes'], 1.0)
        self.assertEqual(dataset.features.shape, (1, schema.n_features))

    def test_constant_column_encodes_to_zero(self):
        schema = build_feature_schema(self.train)
        dataset = vectorize(self.train, schema)
        column = schema.feature_names.index('missed_bytes')
        self.assertTrue((dataset.features[:, column] == 0).all())
        self.assertTrue(((dataset.features >= 0) & (dataset.features <= 1)).all())

    def test_targets(self):
        schema = build_feature_schema(self.train)
        dataset = vectorize(self.train, schema)
        self.assertEqual(dataset.class_names, ['Benign', 'DDoS'])
        self.assertEqual(dataset.binary_targets.tolist(), [0, 0, 1])
        self.assertEqual(dataset.multiclass_targets.tolist(), [0, 0, 1])
        self.assertAlmostEqual(dataset.malicious_ratio(), 1 / 3)

    def test_class_outside_list(self):
        schema = build_feature_schema(self.train)
        with self.assertRaises(DatasetError):
            vectorize(self.train, schema, ['Benign'])

    def test_empty_training_set(self):
        with self.assertRaises(DatasetError):
            build_feature_schema([])


class SplittingTest(SimpleTestCase):

    def test_stratified_split_takes_a_fifth_of_each_class(self):
        labels = np.array([0] * 100 + [1] * 20 + [2] * 2)
        train_idx, eval_idx = split_indices(labels, SplitSpec(eval_fraction=0.2, seed=1))

        self.assertEqual(np.bincount(labels[eval_idx]).tolist(), [20, 4, 1])
        self.assertEqual(np.bincount(labels[train_idx]).tolist(), [80, 16, 1])
        self.assertEqual(len(np.intersect1d(train_idx, eval_idx)), 0)

    def test_split_is_deterministic(self):
        labels = np.array([0] * 50 + [1] * 50)
        first = split_indices(labels, SplitSpec(seed=7))
        second = split_indices(labels, SplitSpec(seed=7))
        self.assertTrue(np.array_equal(first[1], second[1]))

    def test_singleton_class_cannot_be_split(self):
        with self.assertRaises(DatasetError):
            split_indices([0, 0, 0, 1], SplitSpec())

    def test_eval_fraction_range(self):
        with self.assertRaises(ConfigurationError):
            SplitSpec(eval_fraction=1.0)

    def test_folds_partition_rows(self):
        labels = np.array([0] * 37 + [1] * 11 + [2] * 3)
        folds = make_folds(labels, k=5, seed=3)

        self.assertEqual(len(folds), 5)
        validation = np.concatenate([fold.validation_indices for fold in folds])
        self.assertEqual(sorted(validation.tolist()), list(range(len(labels))))
        for fold in folds:
            self.assertEqual(len(fold.train_indices) + len(fold.validation_indices), len(labels))
            self.assertLessEqual(abs(len(fold.validation_indices) - len(labels) / 5), 1)

        # a class smaller than k is spread over distinct folds
        rare = np.flatnonzero(labels == 2)
        owners = {fold.index for fold in folds for i in rare if i in fold.validation_indices}
        self.assertEqual(len(owners), 3)

    def test_folds_need_enough_rows(self):
        with self.assertRaises(DatasetError):
            make_folds([0, 1, 0], k=5)
        with self.assertRaises(ConfigurationError):
            make_folds([0, 1, 0], k=1)


class ContaminationTest(SimpleTestCase):

    def setUp(self):
        labels = np.array([0] * 950 + [1] * 100)
        self.train = encoded_dataset(np.arange(len(labels)).reshape(-1, 1), labels)

    def test_malicious_rows_are_cut_to_ratio(self):
        reduced = subsample_contamination(self.train, 0.05, seed=1)

        self.assertEqual(int((reduced.binary_targets == 0).sum()), 950)
        self.assertEqual(int((reduced.binary_targets == 1).sum()), 50)
        self.assertAlmostEqual(reduced.malicious_ratio(), 0.05)

    def test_already_clean_set_is_unchanged(self):
        reduced = subsample_contamination(self.train, 0.05, seed=1)
        self.assertIs(subsample_contamination(reduced, 0.05, seed=2), reduced)

    def test_ratio_bounds(self):
        for ratio in (0.0, 0.6):
            with self.assertRaises(ConfigurationError):
                subsample_contamination(self.train, ratio)


class SubsetTest(SimpleTestCase):

    def test_exact_counts_in_file_order(self):
        flows = make_flows({None: 30, 'PartOfAHorizontalPortScan': 20, 'C&C': 5})
        subset = carve_subset(flows, {'Benign': 10, 'POAHPS': 10, 'C&C': 1}, np.random.default_rng(1))

        self.assertEqual(class_counts(subset), {'Benign': 10, 'C&C': 1, 'POAHPS': 10})
        positions = [flows.index(flow) for flow in subset]
        self.assertEqual(positions, sorted(positions))

    def test_shortage(self):
        flows = make_flows({None: 3})
        with self.assertRaises(DatasetError):
            carve_subset(flows, {'Benign': 5}, np.random.default_rng(1))

    def test_subsets_depend_only_on_the_seed(self):
        flows = make_flows({None: 40, 'PartOfAHorizontalPortScan': 40, 'C&C': 6})
        targets = {
            'large': {'Benign': 20, 'POAHPS': 18, 'C&C': 2},
            'small': {'Benign': 10, 'POAHPS': 10},
        }

        first = carve_subsets(flows, seed=3, targets=targets)
        second = carve_subsets(flows, seed=3, targets=targets)
        other = carve_subsets(flows, seed=4, targets=targets)

        self.assertEqual(first, second)
        self.assertEqual(class_counts(first['large']), {'Benign': 20, 'C&C': 2, 'POAHPS': 18})
        self.assertEqual(class_counts(first['small']), {'Benign': 10, 'POAHPS': 10})
        self.assertNotEqual(first['large'], other['large'])
        self.assertNotEqual(first['small'], other['small'])


class PipelineTest(SimpleTestCase):

    def setUp(self):
        self.flows = make_flows({None: 60, 'C&C': 10, 'DDoS': 15, 'FileDownload': 1})

    def test_prepare_multiclass(self):
        prepared = prepare_dataset(self.flows, Scenario.MULTICLASS, SplitSpec(seed=1))

        self.assertEqual(prepared.dropped_classes, ['FileDownload'])
        self.assertEqual(prepared.class_names, ['Benign', 'C&C', 'DDoS'])
        self.assertTrue(prepared.multiclass_eligible)
        self.assertEqual(len(prepared.train) + len(prepared.evaluation), 85)
        self.assertEqual(np.bincount(prepared.evaluation.multiclass_targets).tolist(), [12, 2, 3])
        self.assertEqual(prepared.train.n_features, prepared.evaluation.n_features)

    def test_prepare_binary_keeps_every_flow(self):
        prepared = prepare_dataset(self.flows, Scenario.BINARY, SplitSpec(seed=1))
        self.assertEqual(prepared.dropped_classes, [])
        self.assertEqual(len(prepared.train) + len(prepared.evaluation), 86)
        self.assertIn('FileDownload', prepared.class_names)

    def test_saved_dataset_loads_back(self):
        prepared = prepare_dataset(self.flows, Scenario.MULTICLASS, SplitSpec(seed=1))
        with tempfile.TemporaryDirectory() as tmp:
            save_prepared(prepared.train, prepared.evaluation, tmp)
            train, evaluation = load_prepared(tmp)

        self.assertEqual(train.class_names, prepared.class_names)
        self.assertEqual(train.schema.feature_names, prepared.train.schema.feature_names)
        self.assertTrue(np.allclose(train.features, prepared.train.features))
        self.assertTrue(np.array_equal(evaluation.multiclass_targets, prepared.evaluation.multiclass_targets))

    def test_missing_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(DatasetError):
                load_prepared(tmp)
