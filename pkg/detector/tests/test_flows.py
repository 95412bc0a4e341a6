import io
import os
import tempfile

from django.test import SimpleTestCase

from detector.exceptions import CaptureFormatError, DatasetError, InvalidFlowError, MalformedRowError
from detector.flows import (
    BinaryLabel,
    CaptureSummary,
    KNOWN_CAPTURES,
    parse_conn_log,
    parse_conn_log_file,
    summarize_capture,
    write_conn_log,
)
from detector.tests.helpers import conn_log_text, make_flow, make_flows

HEADER = (
    "#separator \\x09\n"
    "#set_separator\t,\n"
    "#empty_field\t(empty)\n"
    "#unset_field\t-\n"
    "#path\tconn\n"
    "#fields\tts\tuid\tid.orig_h\tid.orig_p\tid.resp_h\tid.resp_p\tproto\tservice\tduration\t"
    "orig_bytes\tresp_bytes\tconn_state\tlocal_orig\tlocal_resp\tmissed_bytes\thistory\torig_pkts\t"
    "orig_ip_bytes\tresp_pkts\tresp_ip_bytes\ttunnel_parents   label   detailed-label\n"
    "#types\ttime\tstring\taddr\tport\taddr\tport\tenum\tstring\tinterval\tcount\tcount\tstring\t"
    "bool\tbool\tcount\tstring\tcount\tcount\tcount\tcount\tset[string]   string   string\n"
)

BENIGN_ROW = (
    "1545403816.962094\tCrDn63WjJEmrWGjqf\t192.168.1.195\t41040\t185.244.25.235\t80\ttcp\thttp\t"
    "3.139211\t0\t0\tS0\t-\t-\t0\tS\t3\t180\t0\t0\t-   Benign   -\n"
)
MALICIOUS_ROW = (
    "1545403820.101010\tCY9lJW3gh1Eje4usP6\t192.168.1.195\t52222\t10.1.2.3\t23\ttcp\t-\t"
    "-\t-\t-\tS0\t-\t-\t0\tS\t1\t40\t0\t0\t-   Malicious   PartOfAHorizontalPortScan\n"
)


class ConnLogParserTest(SimpleTestCase):

    def test_parses_iot23_rows_with_space_separated_labels(self):
        records = parse_conn_log(io.StringIO(HEADER + BENIGN_ROW + MALICIOUS_ROW))

        self.assertEqual(len(records), 2)
        benign, malicious = records
        self.assertEqual(benign.uid, 'CrDn63WjJEmrWGjqf')
        self.assertEqual(benign.orig_p, 41040)
        self.assertEqual(benign.service, 'http')
        self.assertAlmostEqual(benign.duration, 3.139211)
        self.assertIs(benign.binary_label, BinaryLabel.BENIGN)
        self.assertIsNone(benign.detailed_label)
        self.assertIsNone(benign.local_orig)

        self.assertTrue(malicious.is_malicious)
        self.assertEqual(malicious.detailed_label, 'PartOfAHorizontalPortScan')
        self.assertIsNone(malicious.service)
        self.assertIsNone(malicious.duration)

    def test_data_row_before_header(self):
        with self.assertRaises(CaptureFormatError):
            parse_conn_log(io.StringIO(BENIGN_ROW))

    def test_header_without_label_column(self):
        text = "#fields\tts\tuid\n1.0\tC1\n"
        with self.assertRaises(CaptureFormatError):
            parse_conn_log(io.StringIO(text))

    def test_malformed_row_reports_line_number(self):
        bad = BENIGN_ROW.replace('41040', 'not-a-port')
        with self.assertRaises(MalformedRowError) as ctx:
            parse_conn_log(io.StringIO(HEADER + BENIGN_ROW + bad))
        self.assertEqual(ctx.exception.line_number, 9)

    def test_short_row(self):
        with self.assertRaises(MalformedRowError):
            parse_conn_log(io.StringIO(HEADER + "1.0\tC1\t1.2.3.4\n"))

    def test_malicious_row_needs_detailed_label(self):
        row = MALICIOUS_ROW.replace('PartOfAHorizontalPortScan', '-')
        with self.assertRaises(MalformedRowError):
            parse_conn_log(io.StringIO(HEADER + row))

    def test_port_out_of_range(self):
        row = BENIGN_ROW.replace('41040', '70000')
        with self.assertRaises(MalformedRowError):
            parse_conn_log(io.StringIO(HEADER + row))

    def test_blank_lines_and_close_marker_are_ignored(self):
        text = HEADER + "\n" + BENIGN_ROW + "#close\t2019-01-01-00-00-00\n"
        self.assertEqual(len(parse_conn_log(io.StringIO(text))), 1)

    def test_written_log_parses_back(self):
        flows = make_flows({None: 3, 'C&C': 2})
        records = parse_conn_log(io.StringIO(conn_log_text(flows)))
        self.assertEqual(records, flows)

    def test_parse_file(self):
        flows = make_flows({None: 2, 'DDoS': 2})
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'conn.log.labeled')
            with open(path, 'w', encoding='utf-8') as stream:
                self.assertEqual(write_conn_log(flows, stream), 4)
            self.assertEqual(parse_conn_log_file(path), flows)


class FlowRecordTest(SimpleTestCase):

    def test_negative_counter_rejected(self):
        with self.assertRaises(InvalidFlowError):
            make_flow(orig_pkts=-1)

    def test_negative_duration_rejected(self):
        with self.assertRaises(InvalidFlowError):
            make_flow(duration=-0.1)

    def test_label_parsing_is_case_insensitive(self):
        self.assertIs(BinaryLabel.parse('malicious'), BinaryLabel.MALICIOUS)
        with self.assertRaises(InvalidFlowError):
            BinaryLabel.parse('suspicious')


class CaptureSummaryTest(SimpleTestCase):

    def test_counts_consolidated_classes(self):
        flows = make_flows({None: 5, 'PartOfAHorizontalPortScan': 3, 'C&C-FileDownload': 2})
        summary = summarize_capture(flows)

        self.assertEqual(summary.total_samples, 10)
        self.assertEqual(summary.per_class, {'Benign': 5, 'POAHPS': 3, 'C&C-FD': 2})
        self.assertIsNone(summary.malware_type)
        self.assertEqual(summary.catalogue_differences(), {})

    def test_known_capture_differences(self):
        flows = make_flows({None: 221, 'C&C': 14, 'C&C-FileDownload': 11, 'DDoS': 1})
        with self.assertLogs('detector.flows.capture', level='WARNING'):
            summary = summarize_capture(flows, '44-1')

        self.assertEqual(summary.malware_type, 'Mirai')
        self.assertEqual(summary.catalogue_differences(), {'total': (247, 238), 'Benign': (221, 212)})
        self.assertFalse(summary.matches_catalogue())

    def test_matching_capture(self):
        known = KNOWN_CAPTURES['44-1']
        flows = make_flows({None: known.per_class['Benign'], 'C&C': 14, 'C&C-FileDownload': 11, 'DDoS': 1})
        self.assertTrue(summarize_capture(flows, '44-1').matches_catalogue())

    def test_empty_capture(self):
        with self.assertRaises(DatasetError):
            summarize_capture([])

    def test_counts_must_sum_to_total(self):
        with self.assertRaises(InvalidFlowError):
            CaptureSummary(total_samples=3, per_class={'Benign': 2})

    def test_catalogue_totals_are_consistent(self):
        for capture in KNOWN_CAPTURES.values():
            self.assertEqual(sum(capture.per_class.values()), capture.total_samples)
