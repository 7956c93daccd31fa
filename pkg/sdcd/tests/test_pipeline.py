#
# SDCD - streaming delay change detection for public transport.
#
# Copyright (C) 2022-2023 by SDCD team
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
#

"""
Streaming delay change detection runs tests.
"""

import json
import os
import os.path
import shutil
import tempfile
import time
import unittest
from collections import Counter
from unittest import mock

from sdcd.config import EMIT, RunConfig, Source
from sdcd.detector import DetectorConfig
from sdcd.engine import Direction, Engine, EngineConfig, KeyingMode, \
    SignalKind, run
from sdcd.ingest import InputError
from sdcd.pipeline import DETECTIONS, GEOJSON, RUN_INFO, SUMMARY_CSV, \
    SUMMARY_JSON, execute, matrix, read_run_info, run_once
from sdcd.report import slice_hours
from sdcd.simulation import Scenario, generate, load_spec

CITY = """\
seed: 11
start_date: 2021-12-13
days: 4
noise_std: 20
propagation: 0
stops:
  count: 50
lines:
  count: 8
  length: [8, 12]
perturbations:
  - line: L3
    position: 4
    delay: 120
    start_day: 2
"""

MORNING = """\
seed: 7
start_date: 2021-12-13
days: 4
service:
  from: "06:00"
  to: "12:00"
headway: 300
noise_std: 20
propagation: 0
stops:
  count: 20
lines:
  count: 4
  length: [6, 8]
perturbations:
  - line: L1
    position: 2
    kind: hourly
    delay: 120
    start_day: 2
    from: "08:00"
    to: "09:00"
"""

DAYLONG = """\
seed: 5
start_date: 2021-12-13
days: 4
service:
  from: "06:00"
  to: "20:00"
headway: 600
noise_std: 20
propagation: 0
stops:
  count: 12
lines:
  count: 2
  length: [5, 6]
perturbations:
  - line: L2
    position: 2
    kind: hourly
    delay: 120
    start_day: 2
    from: "08:00"
    to: "09:00"
"""

THROUGHPUT = """\
seed: 2
days: 14
headway: 60
noise_std: 20
stops:
  count: 50
lines:
  count: 8
  length: [10, 12]
"""


def checksum(fn):
    with open(fn, 'rb') as f:
        return f.read()


class PipelineTestCase(unittest.TestCase):
    """
    Base class for run tests.
    """
    def setUp(self):
        """
        Create temporary directory for scenario files and run artifacts.
        """
        self.tmpdir = tempfile.mkdtemp()


    def tearDown(self):
        """
        Remove temporary directory.
        """
        shutil.rmtree(self.tmpdir)


    def spec(self, text, name='city.yaml'):
        fn = os.path.join(self.tmpdir, name)
        with open(fn, 'w') as f:
            f.write(text)
        return fn


    def config(self, spec, out='out', **kw):
        """
        Create run configuration for a scenario file.
        """
        config = RunConfig(Source('synth', spec, None, None), KeyingMode.EDGE,
            SignalKind.DELAY, DetectorConfig(), 'UTC',
            os.path.join(self.tmpdir, out), EMIT, 1, None, None, None, None,
            False)
        return config._replace(**kw)


    def edge_events(self, events, edge):
        return [e for e in events
            if (e.key.prev, e.key.curr) == (edge.prev, edge.curr)]



class ScenarioRunTestCase(PipelineTestCase):
    """
    Runs of synthetic city scenarios.
    """
    def test_step(self):
        """
        Test edge-based run flags edge with step delay increase
        """
        fn = self.spec(CITY)
        truth = Scenario(load_spec(fn)).truth[0]

        result = run_once(self.config(fn))
        events = self.edge_events(result.events, truth.edge)
        increases = [e for e in events if e.direction == Direction.INCREASE
            and e.event_time >= truth.start]
        self.assertTrue(len(increases) >= 1)

        edges = result.engine.graph.edges
        flagged = {(e.key.prev, e.key.curr) for e in result.events} \
            - {tuple(truth.edge)}
        self.assertTrue(len(flagged) <= 0.05 * len(edges),
            '{} of {} edges flagged'.format(len(flagged), len(edges)))


    def test_bin_edge(self):
        """
        Test bin-based run detects fewer changes of hourly delay increase
        """
        fn = self.spec(MORNING)
        edge = Scenario(load_spec(fn)).truth[0].edge

        r1 = run_once(self.config(fn, out='edge'))
        r2 = run_once(self.config(fn, out='bin', mode=KeyingMode.EDGE_HOUR))

        edge_events = self.edge_events(r1.events, edge)
        bin_events = self.edge_events(r2.events, edge)
        morning = [e for e in bin_events if e.key.hour == 8]
        self.assertTrue(len(edge_events) > 0)
        self.assertTrue(len(morning) < len(edge_events),
            '{} >= {}'.format(len(morning), len(edge_events)))
        self.assertEqual([], [e for e in bin_events if e.key.hour != 8])


    def test_slices(self):
        """
        Test detections of hourly delay increase fall in morning slice
        """
        fn = self.spec(DAYLONG)
        edge = Scenario(load_spec(fn)).truth[0].edge

        result = run_once(self.config(fn))
        events = self.edge_events(result.events, edge)
        morning = list(slice_hours(events, 6, 12))
        evening = list(slice_hours(events, 16, 20))
        self.assertTrue(len(events) > 0)
        self.assertEqual(events, morning)
        self.assertEqual([], evening)


    def test_determinism(self):
        """
        Test repeated run writes identical artifacts
        """
        fn = self.spec(MORNING)
        run_once(self.config(fn, out='r1'))
        run_once(self.config(fn, out='r2'))
        for n in (DETECTIONS, SUMMARY_CSV, SUMMARY_JSON, GEOJSON, RUN_INFO):
            self.assertEqual(checksum(os.path.join(self.tmpdir, 'r1', n)),
                checksum(os.path.join(self.tmpdir, 'r2', n)), n)



class ArtifactsTestCase(PipelineTestCase):
    """
    Run artifacts tests.
    """
    def test_artifacts(self):
        """
        Test run artifacts content
        """
        fn = self.spec(MORNING)
        config = self.config(fn)
        result = run_once(config)
        out = config.out_dir

        with open(os.path.join(out, DETECTIONS)) as f:
            self.assertEqual(len(result.events), sum(1 for line in f))
        with open(os.path.join(out, GEOJSON)) as f:
            layer = json.load(f)
        self.assertEqual('FeatureCollection', layer['type'])
        self.assertEqual(len(result.events), len(layer['features']))
        self.assertFalse(os.path.exists(os.path.join(out,
            'detections-unplaced.jsonl')))

        with open(os.path.join(out, SUMMARY_CSV)) as f:
            rows = f.read().splitlines()
        # header and one row per day
        self.assertEqual(5, len(rows))

        info = read_run_info(os.path.join(out, RUN_INFO))
        self.assertEqual('UTC', info.timezone)
        self.assertEqual(SignalKind.DELAY, info.signal)
        self.assertEqual(4, len(info.records))
        self.assertEqual(result.engine.processed, sum(info.records.values()))


    def test_emit(self):
        """
        Test run writing detections only
        """
        fn = self.spec(MORNING)
        config = self.config(fn, emit=('detections',))
        run_once(config)
        self.assertEqual([DETECTIONS, RUN_INFO],
            sorted(os.listdir(config.out_dir)))


    def test_filter(self):
        """
        Test run reporting detections of morning hours with large values
        """
        fn = self.spec(MORNING)
        r1 = run_once(self.config(fn, out='all'))
        r2 = run_once(self.config(fn, out='some', min_abs=60, from_hour=8,
            to_hour=9))
        expected = [e for e in r1.events if abs(e.value) >= 60
            and e.event_time.hour == 8]
        self.assertEqual(expected, r2.events)


    def test_failure(self):
        """
        Test run failure removes partial artifacts
        """
        fn = self.spec(MORNING)
        config = self.config(fn)
        with mock.patch('sdcd.pipeline.write_geojson',
                side_effect=RuntimeError('disk full')):
            self.assertRaises(RuntimeError, run_once, config)
        self.assertEqual([], os.listdir(config.out_dir))


    def test_replace(self):
        """
        Test run replaces artifacts of previous run
        """
        fn = self.spec(MORNING)
        config = self.config(fn)
        run_once(config._replace(signal=SignalKind.DELTA_DELAY))
        run_once(config)
        info = read_run_info(os.path.join(config.out_dir, RUN_INFO))
        self.assertEqual(SignalKind.DELAY, info.signal)


    def test_invalid_run_info(self):
        """
        Test reading invalid run statistics file
        """
        fn = os.path.join(self.tmpdir, RUN_INFO)
        with open(fn, 'w') as f:
            f.write('{"timezone": "UTC"}')
        self.assertRaises(InputError, read_run_info, fn)
        self.assertRaises(InputError, read_run_info, fn + '.none')



class MatrixTestCase(PipelineTestCase):
    """
    Run matrix tests.
    """
    def test_matrix(self):
        """
        Test run configurations of run matrix
        """
        config = self.config('city.yaml')
        items = list(matrix(config))
        self.assertEqual(6, len(items))

        kinds = Counter(c.detector.kind for c, _ in items)
        self.assertEqual({'adwin': 2, 'hddm': 2, 'kswin': 2}, kinds)
        c, out = items[0]
        self.assertEqual(os.path.join(config.out_dir, 'adwin-delay'), out)
        self.assertEqual(SignalKind.DELAY, c.signal)
        self.assertEqual(config.detector.confidence, c.detector.confidence)


    def test_execute(self):
        """
        Test execution of run matrix
        """
        fn = self.spec(MORNING)
        results = execute(self.config(fn, matrix=True))
        self.assertEqual(6, len(results))
        for r in results:
            self.assertTrue(os.path.exists(os.path.join(r.out_dir,
                SUMMARY_CSV)))
        signals = {r.out_dir: read_run_info(os.path.join(r.out_dir,
            RUN_INFO)).signal for r in results}
        out = os.path.join(self.tmpdir, 'out', 'kswin-delta')
        self.assertEqual(SignalKind.DELTA_DELAY, signals[out])



@unittest.skipUnless(os.environ.get('SDCD_SLOW_TESTS') == '1',
    'slow tests disabled, set SDCD_SLOW_TESTS=1')
class ThroughputTestCase(PipelineTestCase):
    """
    Throughput sanity test.
    """
    def test_throughput(self):
        """
        Test processing of one million vehicle snapshots
        """
        fn = self.spec(THROUGHPUT)
        snapshots, _ = generate(load_spec(fn))
        snapshots = list(snapshots)
        self.assertTrue(len(snapshots) >= 1000000, len(snapshots))
        snapshots = snapshots[:1000000]

        engine = Engine(EngineConfig())
        t = time.perf_counter()
        for event in run(engine, iter(snapshots)):
            pass
        t = time.perf_counter() - t
        self.assertEqual(1000000, engine.stats.seen)
        self.assertTrue(t <= 60, 'processing time {:.1f}s'.format(t))


# vim: sw=4:et:ai
