package insecure;

import okhttp3.OkHttpClient;
import okhttp3.Request;

class Insecure {
    void ping() {
        Request r = new Request.Builder().url("http://insecure.example/api/v1/ping").get().build();
    }

    void stream() {
        Request r = new Request.Builder().url("ws://insecure.example/stream").build();
    }

    void securePing() {
        Request r = new Request.Builder().url("https://insecure.example/api/v2/ping").get().build();
    }

    void shared() {
        Request r = new Request.Builder().url("http://shared.example/ping").get().build();
    }
}
