package multi;

import retrofit2.Retrofit;

class Client {
    Retrofit build() {
        String host = "api.multi.example";
        return new Retrofit.Builder().baseUrl("https://" + host + "/").build();
    }
}
